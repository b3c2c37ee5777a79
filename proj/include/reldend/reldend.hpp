#pragma once

#include "reldend/axioms.hpp"
#include "reldend/constructions.hpp"
#include "reldend/error.hpp"
#include "reldend/expression.hpp"
#include "reldend/finite_algebra.hpp"
#include "reldend/free_dendriform.hpp"
#include "reldend/index.hpp"
#include "reldend/json_io.hpp"
#include "reldend/lincomb.hpp"
#include "reldend/operations.hpp"
#include "reldend/report.hpp"
#include "reldend/scalar.hpp"
#include "reldend/tree.hpp"
