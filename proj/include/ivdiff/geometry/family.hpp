#pragma once

#include <string_view>

namespace ivdiff::geometry {

/// Equivariant family phi_{u,v}: [0,u] -> [0,v] with
/// phi_{v,w} o phi_{u,v} = phi_{u,w}.
enum class Family { affine, yoccoz };

std::string_view to_string(Family f);
Family parse_family(std::string_view text);

struct PhiJet {
  double value = 0.0;
  double derivative = 1.0;
};

/// Value and first derivative of phi_{u,v} at x. Throws std::domain_error
/// unless u > 0, v > 0 and 0 <= x <= u.
PhiJet phi_eval(Family f, double u, double v, double x);

/// Second derivative of phi_{u,v} at x; same preconditions as phi_eval.
double phi_second(Family f, double u, double v, double x);

/// Yoccoz chart y = phi_u^{-1}(x) = tan(pi (x/u - 1/2)) / u. Infinite at
/// the endpoints.
double yoccoz_chart(double u, double x);

}  // namespace ivdiff::geometry
