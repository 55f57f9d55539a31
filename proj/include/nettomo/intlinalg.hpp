#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace nettomo {

using bigint = boost::multiprecision::cpp_int;

// Exact integer linear algebra via fraction-free (Bareiss) elimination.
// Identifiability is a structural yes/no property, so rank must not depend on
// a floating-point threshold.

int exact_rank(std::vector<std::vector<long long>> const& m);

// determinant of a square integer matrix, exact
bigint exact_det(std::vector<std::vector<long long>> const& m);

}  // namespace nettomo
