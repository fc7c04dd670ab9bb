#include <cmath>

#include "elastocloak/geo_maps.hpp"

namespace elastocloak {

namespace {

JacobianData radial_jacobian(int dim, const Eigen::VectorXd& x, double g, double gp) {
  JacobianData out;
  out.at_point = x;
  const double r = x.norm();
  if (r == 0.0) {
    out.M = gp * Eigen::MatrixXd::Identity(dim, dim);
  } else {
    const Eigen::VectorXd e = x / r;
    const Eigen::MatrixXd radial = e * e.transpose();
    out.M = gp * radial + (g / r) * (Eigen::MatrixXd::Identity(dim, dim) - radial);
  }
  out.detM = out.M.determinant();
  return out;
}

double joint_slack(double joint) { return 1e-12 * std::max(1.0, std::abs(joint)); }

}  // namespace

JacobianData jacobian(const RadialMap& map, const Eigen::VectorXd& point, JacobianFrame frame) {
  if (point.size() != map.dim()) throw DomainError("point dimension does not match map");
  const Eigen::VectorXd x = frame == JacobianFrame::Source ? point : map.apply_inverse(point);
  const double r = x.norm();
  for (double j : map.joints()) {
    if (std::abs(r - j) <= joint_slack(j)) {
      const double below = std::nextafter(j, 0.0);
      const Eigen::VectorXd dir = r > 0.0 ? Eigen::VectorXd(x / r) : Eigen::VectorXd::Unit(map.dim(), 0);
      JacobianData inner = radial_jacobian(map.dim(), dir * j, map.g(below), map.g_prime(below));
      JacobianData outer = radial_jacobian(map.dim(), dir * j, map.g(j), map.g_prime(j));
      throw JointError("Jacobian requested at a non-differentiable joint r = " + std::to_string(j), inner, outer);
    }
  }
  JacobianData out = radial_jacobian(map.dim(), x, map.g(r), map.g_prime(r));
  if (!(out.detM > 0.0)) throw Error(ErrorKind::Orientation, "map is not orientation preserving here (det M <= 0)");
  return out;
}

StiffnessTensor pushforward_stiffness(const StiffnessTensor& c, const JacobianData& jac) {
  const int d = c.dim();
  if (jac.M.rows() != d) throw DomainError("Jacobian dimension does not match tensor");
  if (!(jac.detM > 0.0)) throw Error(ErrorKind::Orientation, "push-forward needs det M > 0");
  const Eigen::MatrixXd& m = jac.M;
  // Contract the two differentiated slots (j and l) separately.
  StiffnessTensor half(d), out(d);
  for (int i = 0; i < d; ++i)
    for (int q = 0; q < d; ++q)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          cplx s = 0.0;
          for (int j = 0; j < d; ++j) s += c(i, j, k, l) * m(q, j);
          half(i, q, k, l) = s;
        }
  const bool major = symmetry_report(c, 0.0).major;
  for (int i = 0; i < d; ++i)
    for (int q = 0; q < d; ++q)
      for (int k = 0; k < d; ++k)
        for (int p = 0; p < d; ++p) {
          // Mirror the (k p) >= (i q) half so major symmetry holds bit for bit.
          if (major && k * d + p < i * d + q) {
            out(i, q, k, p) = out(k, p, i, q);
            continue;
          }
          cplx s = 0.0;
          for (int l = 0; l < d; ++l) s += half(i, q, k, l) * m(p, l);
          out(i, q, k, p) = s / jac.detM;
        }
  out.set_flags(major, false);
  return out;
}

StiffnessTensor pushforward_stiffness(const StiffnessTensor& c, const RadialMap& map, const Eigen::VectorXd& y) {
  return pushforward_stiffness(c, jacobian(map, y, JacobianFrame::Image));
}

cplx pushforward_density(cplx rho, const JacobianData& jac) {
  if (!(jac.detM > 0.0)) throw Error(ErrorKind::Orientation, "push-forward needs det M > 0");
  return rho / jac.detM;
}

cplx pushforward_density(cplx rho, const RadialMap& map, const Eigen::VectorXd& y) {
  return pushforward_density(rho, jacobian(map, y, JacobianFrame::Image));
}

double compose_pushforward_check(const StiffnessTensor& c, const RadialMap& a, const RadialMap& b,
                                 const Eigen::VectorXd& q) {
  const RadialMap ba = compose(a, b);
  const StiffnessTensor direct = pushforward_stiffness(c, ba, q);
  const Eigen::VectorXd p = b.apply_inverse(q);
  const StiffnessTensor staged = pushforward_stiffness(pushforward_stiffness(c, a, p), b, q);
  double dev = 0.0;
  for (std::size_t i = 0; i < direct.entries().size(); ++i)
    dev = std::max(dev, std::abs(direct.entries()[i] - staged.entries()[i]));
  return dev;
}

Eigen::MatrixXd polar_frame(const Eigen::VectorXd& x) {
  const double r = x.norm();
  if (r == 0.0) throw SingularityError("polar frame undefined at the origin");
  if (x.size() == 2) {
    Eigen::MatrixXd f(2, 2);
    f << x(0) / r, -x(1) / r, x(1) / r, x(0) / r;
    return f;
  }
  if (x.size() != 3) throw DomainError("dimension must be 2 or 3");
  const double theta = std::acos(std::clamp(x(2) / r, -1.0, 1.0));
  const double phi = std::atan2(x(1), x(0));
  Eigen::MatrixXd f(3, 3);
  f.col(0) << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta);
  f.col(1) << std::cos(theta) * std::cos(phi), std::cos(theta) * std::sin(phi), -std::sin(theta);
  f.col(2) << -std::sin(phi), std::cos(phi), 0.0;
  return f;
}

nlohmann::json map_to_json(const RadialMap& map) {
  if (map.kind() == RadialMap::Kind::Custom) throw DomainError("custom maps carry code and cannot be serialized");
  return map.description;
}

RadialMap map_from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    const int dim = j.at("dim").get<int>();
    if (kind == "identity") {
      const double r_max = j.contains("params") ? j["params"].value("r_max", 2.0) : 2.0;
      return identity_map(dim, r_max);
    }
    if (kind == "blowup") return blowup_F(dim);
    if (kind == "regularized") return regularized_Fh(j.at("params").at("h").get<double>(), dim);
    if (kind == "composite") {
      const auto& parts = j.at("parts");
      if (parts.size() != 2) throw Error(ErrorKind::Parse, "composite map needs exactly two parts");
      return compose(map_from_json(parts[0]), map_from_json(parts[1]));
    }
    if (kind == "inverse") return inverse(map_from_json(j.at("of")));
    throw Error(ErrorKind::Parse, "unknown map kind '" + kind + "'");
  } catch (const nlohmann::json::exception& ex) {
    throw Error(ErrorKind::Parse, std::string("map JSON: ") + ex.what());
  }
}

}  // namespace elastocloak
