#pragma once

#include "errors.hpp"
#include "oct_model.hpp"
#include "sphere_reduction.hpp"
#include "bonds.hpp"
#include "mu_system.hpp"
#include "nap.hpp"
#include "classifier.hpp"
#include "motion.hpp"
#include "io.hpp"
