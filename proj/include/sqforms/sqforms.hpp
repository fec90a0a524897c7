#pragma once

// Exact engines for representing integers as x^2 + D*y^2 (D in {1,2,3})
// and as sums of four squares, each result backed by a machine-checkable
// descent certificate, plus the congruence solvers that seed the descents
// and naive oracles for independent cross-checks.

#include "sqforms/arith.hpp"
#include "sqforms/congruence.hpp"
#include "sqforms/descent.hpp"
#include "sqforms/errors.hpp"
#include "sqforms/forms.hpp"
#include "sqforms/oracle.hpp"
#include "sqforms/pipeline.hpp"
#include "sqforms/trace_json.hpp"
