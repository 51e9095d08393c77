#ifndef CACHENET_CACHENET_HPP
#define CACHENET_CACHENET_HPP

#include "cachenet/baselines.hpp"
#include "cachenet/benders.hpp"
#include "cachenet/experiments.hpp"
#include "cachenet/lp.hpp"
#include "cachenet/matrix.hpp"
#include "cachenet/model.hpp"
#include "cachenet/oracle.hpp"
#include "cachenet/placement.hpp"
#include "cachenet/popularity.hpp"
#include "cachenet/random.hpp"
#include "cachenet/scenario.hpp"

#endif  // CACHENET_CACHENET_HPP
