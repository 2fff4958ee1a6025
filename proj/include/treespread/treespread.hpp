#pragma once

// Exact combinatorics engine for intersecting families of spanning trees:
// enumeration, counting and sampling of labeled forests, set-family calculus
// with spreadness measures, spread approximation, a lopsided-local-lemma
// checker, and exact extremal search. All counts are arbitrary-precision
// integers and all probabilities exact rationals.

#include "treespread/clique.hpp"
#include "treespread/counting.hpp"
#include "treespread/edge.hpp"
#include "treespread/edgeset.hpp"
#include "treespread/errors.hpp"
#include "treespread/extremal.hpp"
#include "treespread/family.hpp"
#include "treespread/forest.hpp"
#include "treespread/lll.hpp"
#include "treespread/numbers.hpp"
#include "treespread/prufer.hpp"
#include "treespread/sampling.hpp"
#include "treespread/selftest.hpp"
#include "treespread/spread_approx.hpp"
#include "treespread/spreadness.hpp"
