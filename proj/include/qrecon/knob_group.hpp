#pragma once

#include <cstddef>
#include <string_view>
#include <variant>
#include <vector>

#include "qrecon/linalg.hpp"
#include "qrecon/modality.hpp"

namespace qrecon {

enum class GroupId { Rotation3D, Torus };
std::string_view to_string(GroupId g) noexcept;

// Rotation by `angle` about a unit axis, canonicalized so that angle lies in
// [0, pi]; the identity is (z, 0) and at angle pi the first nonzero axis
// component is positive.
struct AxisAngle {
  Eigen::Vector3d axis;
  double angle;
};

// Element of a knob group: a rotation of the apparatus (Stern-Gerlach style)
// or a vector of independent phase shifts.
class KnobTransformation {
public:
  // Throws GroupError if axis is not unit length within 1e-12 or angle is not finite.
  static KnobTransformation rotation(const Eigen::Vector3d& axis, double angle);
  // Phases are wrapped into (-pi, pi].
  static KnobTransformation torus(std::vector<double> phases);

  GroupId group() const noexcept;
  const AxisAngle& axis_angle() const;     // GroupError unless a rotation
  const std::vector<double>& phases() const;  // GroupError unless a torus element

  Eigen::Matrix3d rotation_matrix() const;

private:
  explicit KnobTransformation(std::variant<AxisAngle, std::vector<double>> payload)
      : payload_(std::move(payload)) {}
  std::variant<AxisAngle, std::vector<double>> payload_;
};

// Axis-angle distance: Frobenius distance of rotation matrices for rotations,
// max wrapped phase difference for torus elements.
double payload_distance(const KnobTransformation& a, const KnobTransformation& b);

// A concrete continuous group of knob settings together with its N x N
// unitary representation. Two instances exist: SO(3) acting through its
// spin-1/2 (SU(2)) representation at N = 2, and the commutative torus U(1)^N
// acting through diagonal phase matrices.
class KnobGroup {
public:
  static KnobGroup rotations();
  static KnobGroup torus(std::size_t n);

  GroupId id() const noexcept { return id_; }
  std::size_t dimension() const noexcept { return dimension_; }

  KnobTransformation identity() const;
  // g1 after g2.
  KnobTransformation compose(const KnobTransformation& g1, const KnobTransformation& g2) const;
  KnobTransformation inverse(const KnobTransformation& g) const;
  ComplexMatrix represent(const KnobTransformation& g) const;

private:
  KnobGroup(GroupId id, std::size_t dimension) : id_(id), dimension_(dimension) {}
  void require_member(const KnobTransformation& g) const;

  GroupId id_;
  std::size_t dimension_;
};

struct ProjectiveCheck {
  bool holds;
  // Unit-modulus factor c minimizing ||U(g1)U(g2) - c U(g1 g2)||_F.
  Complex phase;
  double distance;
  // True when the closed-form trace was (near) zero and c came from a scan.
  bool scanned;
};

ProjectiveCheck projective_homomorphism_check(const KnobGroup& group, const KnobTransformation& g1,
                                              const KnobTransformation& g2, double tol = 1e-9);

// Transition probabilities of a diagonal phase representation; always the identity.
ProbabilityMatrix commutative_limit_probabilities(const std::vector<double>& phases);

// Spin-1/2 transition probabilities after rotating the analyzer by theta about y.
ProbabilityMatrix stern_gerlach_transition(double theta);

}  // namespace qrecon
