#pragma once

#include <zetalab/exact/biseries.hpp>
#include <zetalab/exact/fraction.hpp>
#include <zetalab/exact/modular.hpp>
#include <zetalab/exact/padic.hpp>
#include <zetalab/exact/parser.hpp>
#include <zetalab/exact/polynomial.hpp>
#include <zetalab/exact/product.hpp>
#include <zetalab/exact/rational.hpp>
#include <zetalab/exact/rational_function.hpp>
