#include "qrecon/knob_group.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Geometry>

#include "qrecon/errors.hpp"
#include "qrecon/phase_solver.hpp"

namespace qrecon {

namespace {

constexpr double kAxisTol = 1e-12;

AxisAngle canonical_from_quaternion(Eigen::Quaterniond q) {
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  const double vnorm = q.vec().norm();
  if (vnorm == 0.0) return {Eigen::Vector3d::UnitZ(), 0.0};
  const double angle = 2.0 * std::atan2(vnorm, q.w());
  if (angle == 0.0) return {Eigen::Vector3d::UnitZ(), 0.0};
  Eigen::Vector3d axis = q.vec() / vnorm;
  if (q.w() <= 1e-14) {
    // Half-turn: n and -n are the same rotation.
    for (int k = 0; k < 3; ++k) {
      if (std::abs(axis(k)) > kAxisTol) {
        if (axis(k) < 0.0) axis = -axis;
        break;
      }
    }
  }
  return {axis, angle};
}

Eigen::Quaterniond to_quaternion(const AxisAngle& aa) {
  return Eigen::Quaterniond(Eigen::AngleAxisd(aa.angle, aa.axis));
}

}  // namespace

std::string_view to_string(GroupId g) noexcept { return g == GroupId::Rotation3D ? "so3" : "torus"; }

KnobTransformation KnobTransformation::rotation(const Eigen::Vector3d& axis, double angle) {
  if (!axis.allFinite() || std::abs(axis.norm() - 1.0) > kAxisTol) {
    throw GroupError("rotation axis must be a unit vector");
  }
  if (!std::isfinite(angle)) throw GroupError("rotation angle must be finite");
  return KnobTransformation(canonical_from_quaternion(to_quaternion({axis, angle})));
}

KnobTransformation KnobTransformation::torus(std::vector<double> phases) {
  if (phases.empty()) throw GroupError("torus element needs at least one phase");
  for (double& p : phases) {
    if (!std::isfinite(p)) throw GroupError("torus phases must be finite");
    p = wrap_phase(p);
  }
  return KnobTransformation(std::move(phases));
}

GroupId KnobTransformation::group() const noexcept {
  return std::holds_alternative<AxisAngle>(payload_) ? GroupId::Rotation3D : GroupId::Torus;
}

const AxisAngle& KnobTransformation::axis_angle() const {
  if (const auto* aa = std::get_if<AxisAngle>(&payload_)) return *aa;
  throw GroupError("not a rotation");
}

const std::vector<double>& KnobTransformation::phases() const {
  if (const auto* p = std::get_if<std::vector<double>>(&payload_)) return *p;
  throw GroupError("not a torus element");
}

Eigen::Matrix3d KnobTransformation::rotation_matrix() const {
  const AxisAngle& aa = axis_angle();
  return Eigen::AngleAxisd(aa.angle, aa.axis).toRotationMatrix();
}

double payload_distance(const KnobTransformation& a, const KnobTransformation& b) {
  if (a.group() != b.group()) throw GroupError("payload_distance across different groups");
  if (a.group() == GroupId::Rotation3D) return (a.rotation_matrix() - b.rotation_matrix()).norm();
  const auto& pa = a.phases();
  const auto& pb = b.phases();
  if (pa.size() != pb.size()) throw GroupError("torus elements of different dimension");
  double d = 0.0;
  for (std::size_t k = 0; k < pa.size(); ++k) d = std::max(d, std::abs(wrap_phase(pa[k] - pb[k])));
  return d;
}

KnobGroup KnobGroup::rotations() { return KnobGroup(GroupId::Rotation3D, 2); }

KnobGroup KnobGroup::torus(std::size_t n) {
  if (n == 0) throw DomainError("torus group dimension must be positive");
  return KnobGroup(GroupId::Torus, n);
}

void KnobGroup::require_member(const KnobTransformation& g) const {
  if (g.group() != id_) {
    throw GroupError(std::string("transformation belongs to ") + std::string(to_string(g.group())) +
                     ", not " + std::string(to_string(id_)));
  }
  if (id_ == GroupId::Torus && g.phases().size() != dimension_) {
    throw GroupError("torus element has " + std::to_string(g.phases().size()) + " phases, group has " +
                     std::to_string(dimension_));
  }
}

KnobTransformation KnobGroup::identity() const {
  if (id_ == GroupId::Rotation3D) return KnobTransformation::rotation(Eigen::Vector3d::UnitZ(), 0.0);
  return KnobTransformation::torus(std::vector<double>(dimension_, 0.0));
}

KnobTransformation KnobGroup::compose(const KnobTransformation& g1, const KnobTransformation& g2) const {
  require_member(g1);
  require_member(g2);
  if (id_ == GroupId::Rotation3D) {
    const Eigen::Quaterniond q = to_quaternion(g1.axis_angle()) * to_quaternion(g2.axis_angle());
    const AxisAngle aa = canonical_from_quaternion(q.normalized());
    return KnobTransformation::rotation(aa.axis.normalized(), aa.angle);
  }
  std::vector<double> sum(dimension_);
  for (std::size_t k = 0; k < dimension_; ++k) sum[k] = g1.phases()[k] + g2.phases()[k];
  return KnobTransformation::torus(std::move(sum));
}

KnobTransformation KnobGroup::inverse(const KnobTransformation& g) const {
  require_member(g);
  if (id_ == GroupId::Rotation3D) {
    const AxisAngle& aa = g.axis_angle();
    return KnobTransformation::rotation(aa.axis, -aa.angle);
  }
  std::vector<double> neg(g.phases());
  for (double& p : neg) p = -p;
  return KnobTransformation::torus(std::move(neg));
}

ComplexMatrix KnobGroup::represent(const KnobTransformation& g) const {
  require_member(g);
  if (id_ == GroupId::Rotation3D) {
    if (dimension_ != 2) throw RepresentationError("rotations are represented at N = 2 only");
    // exp(-i theta (n . sigma) / 2) = cos(theta/2) I - i sin(theta/2) (n . sigma)
    const AxisAngle& aa = g.axis_angle();
    const double c = std::cos(aa.angle / 2.0);
    const double s = std::sin(aa.angle / 2.0);
    const double nx = aa.axis.x();
    const double ny = aa.axis.y();
    const double nz = aa.axis.z();
    ComplexMatrix u(2, 2);
    u(0, 0) = Complex(c, -s * nz);
    u(0, 1) = Complex(-s * ny, -s * nx);
    u(1, 0) = Complex(s * ny, -s * nx);
    u(1, 1) = Complex(c, s * nz);
    return u;
  }
  const auto dim = static_cast<Eigen::Index>(dimension_);
  ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) u(k, k) = std::polar(1.0, g.phases()[static_cast<std::size_t>(k)]);
  return u;
}

ProjectiveCheck projective_homomorphism_check(const KnobGroup& group, const KnobTransformation& g1,
                                              const KnobTransformation& g2, double tol) {
  const ComplexMatrix product = group.represent(g1) * group.represent(g2);
  const ComplexMatrix composed = group.represent(group.compose(g1, g2));
  const Complex overlap = (composed.adjoint() * product).trace();

  ProjectiveCheck out{false, Complex(1.0, 0.0), 0.0, false};
  if (std::abs(overlap) > 1e-12 * static_cast<double>(group.dimension())) {
    out.phase = overlap / std::abs(overlap);
    out.distance = (product - out.phase * composed).norm();
  } else {
    out.scanned = true;
    out.distance = std::numeric_limits<double>::infinity();
    constexpr int kSamples = 360;
    for (int k = 0; k < kSamples; ++k) {
      const Complex c = std::polar(1.0, 2.0 * std::numbers::pi * k / kSamples);
      const double d = (product - c * composed).norm();
      if (d < out.distance) {
        out.distance = d;
        out.phase = c;
      }
    }
  }
  out.holds = out.distance < tol;
  return out;
}

ProbabilityMatrix commutative_limit_probabilities(const std::vector<double>& phases) {
  const KnobGroup group = KnobGroup::torus(phases.size());
  const ComplexMatrix u = group.represent(KnobTransformation::torus(phases));
  return validate_bistochastic(transition_probability_matrix(u));
}

ProbabilityMatrix stern_gerlach_transition(double theta) {
  const KnobGroup group = KnobGroup::rotations();
  const ComplexMatrix u = group.represent(KnobTransformation::rotation(Eigen::Vector3d::UnitY(), theta));
  return validate_bistochastic(transition_probability_matrix(u));
}

}  // namespace qrecon
