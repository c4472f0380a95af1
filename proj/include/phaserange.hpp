#ifndef PHASERANGE_HPP
#define PHASERANGE_HPP

#include "phaserange/cvp.hpp"
#include "phaserange/errors.hpp"
#include "phaserange/estimator.hpp"
#include "phaserange/exactmath.hpp"
#include "phaserange/int_matrix.hpp"
#include "phaserange/io.hpp"
#include "phaserange/lattice.hpp"
#include "phaserange/oracle.hpp"
#include "phaserange/plan.hpp"
#include "phaserange/random.hpp"
#include "phaserange/simulate.hpp"

#endif
