#pragma once

#include "jbt/types.hpp"

#include <functional>

namespace jbt::geodesy {

/// The unique geodesic joining two projections: atoms and angles at the
/// source, minimal tripotents pointing at the target. Active components
/// (angle > 0) come first, angle ascending; the frame is completed by the
/// stationary atoms shared between source and target.
struct ConnectData {
  Frame frame;
  std::vector<ComplexMatrix> tripotents;
  std::vector<double> angles;  // in [0, pi/2), one per tripotent
  Projection source;
  Projection target;
};

/// One rotating plane of a geodesic: a rank-1 atom, the minimal tripotent
/// it rotates toward, and the rotation rate.
struct GeodesicComponent {
  Projection atom;
  ComplexMatrix tripotent;
  double angle;
};

/// A geodesic in closed form: rotating components plus the atoms that the
/// curve leaves fixed.
struct GeodesicSpec {
  Projection base;
  std::vector<GeodesicComponent> components;
  std::vector<Projection> stationary_atoms;
};

/// Closed-form geodesic through a with initial velocity u: rotation rates
/// are the singular values of u.
GeodesicSpec geodesic_spec(const Projection& a, const TangentVector& u);

/// The same curve reparametrized so t=0 hits the source and t=1 the
/// target.
GeodesicSpec geodesic_spec(const ConnectData& data);

/// Evaluate the curve: sum of
///   cos^2(theta t) a_k + sin(theta t)cos(theta t) u_k + sin^2(theta t) u_k^(2)
/// over components, plus the stationary atoms. Always a valid projection
/// of the base rank, for every real t.
Projection geodesic_eval(const GeodesicSpec& spec, double t);

/// gamma_{a,u}(t).
Projection geodesic_point(const Projection& a, const TangentVector& u,
                          double t);

/// Exp_a(u) = gamma_{a,u}(1). Rejects velocities with largest singular
/// value >= pi/2, the injectivity bound.
Projection exp_map(const Projection& a, const TangentVector& u);

/// Data of the unique geodesic from a to b. Requires b in the normal
/// neighbourhood of a; otherwise throws DomainError naming the degenerate
/// directions.
ConnectData connect(const Projection& a, const Projection& b);

/// Velocity at t=0 of the unique geodesic from a to b: sum of
/// theta_k u_k. Exact inverse of exp_map on its domain.
TangentVector log_map(const Projection& a, const Projection& b);

/// Riemann distance (1/sqrt(r)) * l2-norm of the principal angles between
/// the ranges. Defined for every pair of equal rank, including antipodal
/// ones.
double distance(const Projection& a, const Projection& b);

/// gamma(1/2) along the connecting geodesic; equidistant from a and b.
Projection midpoint(const Projection& a, const Projection& b);

/// The symmetry z1 + z_half + z0 -> z1 - z_half + z0 with center a;
/// involutive, equal to conjugation by 2a - I, maps projections to
/// projections.
ComplexMatrix peirce_symmetry(const Projection& a, const ComplexMatrix& z);

/// A unitary w with w a w* = b; conjugation by w preserves the triple
/// product, so it moves the whole geometry of M_r onto itself.
ComplexMatrix transport_automorphism(const Projection& a,
                                     const Projection& b);

/// Tangent part of the second derivative of a curve at t, by central
/// differences at step h with one Richardson refinement. Vanishes along
/// geodesics up to O(h^2).
TangentVector covariant_acceleration(
    const std::function<Projection(double)>& curve, double t, double h);

}  // namespace jbt::geodesy
