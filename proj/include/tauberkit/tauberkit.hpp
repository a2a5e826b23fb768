#pragma once

// Umbrella header: the full numeric toolkit for one-sided exponential-decay
// analysis -- transforms, boundary factorizations, condition checkers, error
// envelopes, a worked-exemplar corpus, and a law estimator.

#include "tauberkit/corpus.hpp"
#include "tauberkit/decay_function.hpp"
#include "tauberkit/engine.hpp"
#include "tauberkit/errors.hpp"
#include "tauberkit/estimator.hpp"
#include "tauberkit/model.hpp"
#include "tauberkit/quadrature.hpp"
#include "tauberkit/special_functions.hpp"
