#pragma once

#include <string>
#include <vector>

#include "vclab/group.hpp"

namespace vclab {

FiniteGroup make_cyclic(int n);
FiniteGroup make_dihedral(int n);   // order 2n, r of order n, f r f = r^-1
FiniteGroup make_symmetric(int n);  // n <= 5
FiniteGroup make_q8();              // 1, -1, i, -i, j, -j, k, -k; i*j = k
FiniteGroup make_ut3(int p);        // unitriangular 3x3 over Z_p
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

std::vector<std::string> catalog_names();
bool catalog_has(const std::string& name);
FiniteGroup catalog_group(const std::string& name);

}  // namespace vclab
