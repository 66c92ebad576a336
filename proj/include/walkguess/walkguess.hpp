#pragma once

// Umbrella header: the whole library in one include.

#include "errors.hpp"
#include "rational.hpp"
#include "poly.hpp"
#include "series.hpp"
#include "matrix.hpp"
#include "modular.hpp"
#include "stepset.hpp"
#include "enumerate.hpp"
#include "iterate.hpp"
#include "relations.hpp"
#include "guess.hpp"
#include "pipeline.hpp"
#include "sequence.hpp"
#include "report.hpp"
