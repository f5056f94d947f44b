#pragma once

// Everything except the command layer (superh/cli.hpp).

#include <superh/rational.hpp>
#include <superh/monomial.hpp>
#include <superh/polynomial.hpp>
#include <superh/text.hpp>
#include <superh/linalg.hpp>
#include <superh/linear_operator.hpp>
#include <superh/diffops.hpp>
#include <superh/harmonic.hpp>
#include <superh/integration.hpp>
#include <superh/modules.hpp>
#include <superh/parallel.hpp>
#include <superh/report.hpp>
