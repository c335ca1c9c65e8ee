#pragma once

#include <string>
#include <vector>

#include "topomono/modular_data.hpp"

namespace topomono {

/// Catalog of small anyon models.
///
///   trivial
///   toric_code_zn        params {N}, 2 <= N <= 8; labels e^j m^k at index j + N k
///   semion               params {} or {conjugate}; conjugate = 1 gives theta_s = -i
///   double_semion        semion x conjugate semion
///   fibonacci            params {} or {conjugate}; default theta_tau = exp(4 pi i / 5)
///   ising                params {} or {nu}, nu odd in [1, 15]; theta_sigma = exp(i pi nu / 8)
///   decohered_toric_code the degenerate {1, e} category (S all ones, theta = (1, 1))
///   product              use catalog_product
ModularData catalog_model(const std::string& name, const std::vector<int>& params = {});

/// Deligne product: S = S^A (x) S^B, theta = theta^A (x) theta^B (Kronecker order).
ModularData catalog_product(const ModularData& A, const ModularData& B);

/// Names accepted by resolve_catalog, in listing order.
std::vector<std::string> catalog_names();

/// Parses a catalog spec string: "name", "name:p1,p2", "toric_code_z<N>",
/// or "product:A+B" where A and B are themselves specs.
ModularData resolve_catalog(const std::string& spec);

/// False only for models with degenerate S (decohered_toric_code).
bool catalog_is_modular(const std::string& spec);

}  // namespace topomono
