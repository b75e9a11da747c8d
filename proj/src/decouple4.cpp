#include "symdec/decouple4.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "symdec/dirac.hpp"

namespace symdec {

std::string_view to_string(Form f) {
  switch (f) {
    case Form::BlockDiagonal: return "block";
    case Form::HamiltonianForm: return "hamiltonian";
    case Form::NormalForm: return "normal";
    case Form::ComplexCanonical: return "complex-canonical";
  }
  return "unknown";
}

Symplex4 Symplex4::make(Matrix m, double tol) {
  if (m.rows() != 4 || m.cols() != 4)
    throw Error(ErrorCode::DimensionMismatch, "expected a 4x4 symplex");
  EmeqState s = emeq_from_symplex(m, tol);
  return {std::move(m), s};
}

Symplex4 Symplex4::unchecked(Matrix m) {
  EmeqState s = emeq_from_coefficients(rdm_coefficients(m));
  return {std::move(m), s};
}

double hamiltonian_residual(const Matrix& f) {
  double r = off_block_max_abs(f);
  for (std::size_t i = 0; i < f.rows(); ++i) r = std::max(r, std::abs(f(i, i)));
  return r;
}

double normal_residual(const Matrix& f) {
  double r = hamiltonian_residual(f);
  for (std::size_t k = 0; 2 * k + 1 < f.rows(); ++k)
    r = std::max(r, std::abs(f(2 * k, 2 * k + 1) + f(2 * k + 1, 2 * k)));
  return r;
}

double canonical_residual(const Matrix& f) {
  const RdmCoefficients c = rdm_coefficients(f);
  double r = 0.0;
  for (std::size_t k = 0; k < 16; ++k)
    if (k != 5 && k != 6 && k != 8) r = std::max(r, std::abs(c[k]));
  return r;
}

namespace {

// arctan(num/den) with the quadrant from atan2, folded into (-pi/2, pi/2].
double folded_atan(double num, double den, double tol) {
  if (std::abs(num) <= tol && std::abs(den) <= tol) return 0.0;
  double a = std::atan2(num, den);
  if (a > std::numbers::pi / 2) a -= std::numbers::pi;
  else if (a <= -std::numbers::pi / 2) a += std::numbers::pi;
  return a;
}

// arctanh(num/den); 0/0 gives 0 (nothing to remove).
double rapidity(double num, double den, double tol, int step) {
  if (std::abs(num) <= tol && std::abs(den) <= tol) return 0.0;
  if (std::abs(num) >= std::abs(den))
    throw Error(ErrorCode::BoostDomain,
                "step " + std::to_string(step) + ": arctanh(" + std::to_string(num) + " / " +
                    std::to_string(den) + ") out of domain",
                step);
  return std::atanh(num / den);
}

class Pipeline {
 public:
  Pipeline(const Matrix& f, const SymplecticTransform& t, const DecoupleOptions& opt)
      : f_(f), t_(t), opt_(opt) {
    const double n = std::max(1.0, f.frobenius_norm());
    lin_tol_ = opt.step_tol * n;
    // masses are bilinear, but an n^2 scale hides couplings near convergence
    quad_tol_ = opt.step_tol * n;
    refresh();
  }

  void step(int b, double eps) {
    if (std::abs(eps) < opt_.step_tol) {
      t_.log.push_back({b, eps, 0, 1, true});
      return;
    }
    const auto [r, r_inv] = basic_matrices(b, eps);
    f_ = r * f_ * r_inv;
    t_.r = r * t_.r;
    t_.r_inv = t_.r_inv * r_inv;
    t_.log.push_back({b, eps, 0, 1, false});
    refresh();
  }

  const EmeqState& s() const { return s_; }
  MassComponents masses() const { return mass_components(s_); }
  AuxVectors aux() const { return aux_vectors(s_); }
  const Matrix& f() const { return f_; }
  SymplecticTransform& transform() { return t_; }
  double lin_tol() const { return lin_tol_; }
  double quad_tol() const { return quad_tol_; }

 private:
  void refresh() { s_ = emeq_from_coefficients(rdm_coefficients(f_)); }

  Matrix f_;
  SymplecticTransform t_;
  DecoupleOptions opt_;
  EmeqState s_;
  double lin_tol_ = 0.0;
  double quad_tol_ = 0.0;
};

DecoupleResult start_result(const Matrix& f, const DecoupleOptions& opt) {
  DecoupleResult res;
  const Symplex4 in = Symplex4::make(f, kDefaultPredicateTol);
  res.input = in.matrix;
  res.invariants = spectral_invariants(in.state);
  res.omega1 = res.invariants.w1;
  res.omega2 = res.invariants.w2;
  res.transform = SymplecticTransform::identity(4);
  (void)opt;
  return res;
}

double post_scale(const Matrix& f, const DecoupleOptions& opt) {
  return opt.post_tol * std::max(1.0, f.frobenius_norm());
}

double sgn(double x) { return x < 0.0 ? -1.0 : 1.0; }

std::optional<ClosedFormCheck> closed_form_check(const EmeqState& in, double sx, double sb,
                                                  const EmeqState& out, double cross_tol) {
  const MassComponents m = mass_components(in);
  const Vec3 b = aux_vectors(in).b;
  const double mx = std::hypot(m.mr, m.mg);
  const double byz = std::hypot(b[1], b[2]);
  const double bb = norm2(b);
  const double nb = std::sqrt(bb);
  constexpr double kMin = 1e-8;
  if (mx <= kMin || byz <= kMin || nb <= kMin || bb <= mx * mx) return std::nullopt;

  const auto& P = in.p;
  const auto& E = in.e;
  const double en = in.energy;
  const double root = std::sqrt(bb - mx * mx);

  ClosedFormCheck c;
  c.predicted[0] = en * std::sqrt(1.0 - mx * mx / bb);
  c.predicted[1] = sx * (P[0] * m.mr - E[0] * m.mg) / mx * root / byz;
  c.predicted[2] = sx * sb * root / (nb * mx * byz) *
                   (m.mg * (b[2] * E[1] - b[1] * E[2]) + m.mr * (b[1] * P[2] - b[2] * P[1]));
  c.predicted[3] = sx * (bb * (m.mr * E[0] + m.mg * P[0]) - en * b[0] * mx * mx) / (mx * byz * nb);
  c.predicted[4] = sx * sb *
                   (m.mr * (b[1] * E[2] - b[2] * E[1]) + m.mg * (b[1] * P[2] - b[2] * P[1])) /
                   (mx * byz);
  c.predicted[5] = sb * (en * norm2(in.b) - dot(P, cross(E, in.b))) / nb;
  c.pipeline = {out.energy, out.p[0], out.p[2], out.e[0], out.e[2], out.b[1]};
  for (std::size_t i = 0; i < 6; ++i)
    c.max_deviation = std::max(c.max_deviation, std::abs(c.predicted[i] - c.pipeline[i]));
  c.agrees = c.max_deviation <= cross_tol * std::max(1.0, std::sqrt(bb));
  return c;
}

}  // namespace

DecoupleResult decouple_block_diagonal(const Matrix& f, const DecoupleOptions& opt) {
  DecoupleResult res = start_result(f, opt);
  if (res.invariants.classification == Classification::ComplexQuadruple)
    throw Error(ErrorCode::ComplexEigenvalues,
                "K2 = " + std::to_string(res.invariants.k2) + " < 0; use a complex branch");

  Pipeline p(res.input, res.transform, opt);
  const EmeqState in = p.s();

  // (1) M_g -> 0 by a phase rotation.
  {
    const MassComponents m = p.masses();
    p.step(0, folded_atan(m.mg, m.mr, p.quad_tol()));
  }
  const double sx = sgn(p.masses().mr);
  // (2), (3) align b with the y axis.
  {
    const Vec3 b = p.aux().b;
    p.step(7, folded_atan(b[2], b[1], p.quad_tol()));
  }
  {
    const Vec3 b = p.aux().b;
    p.step(9, -folded_atan(b[0], b[1], p.quad_tol()));
  }
  const double sb = sgn(p.aux().b[1]);
  // (4) M_r -> 0 by a phase boost; needs |M_r| < |b_y|.
  {
    const MassComponents m = p.masses();
    const double by = p.aux().b[1];
    const double tol = post_scale(res.input, opt) * std::max(1.0, res.input.frobenius_norm());
    if (std::abs(by) <= tol && std::abs(m.mr) <= tol && std::abs(m.mg) <= tol) {
      if (off_block_max_abs(p.f()) > post_scale(res.input, opt))
        throw Error(ErrorCode::DegenerateB,
                    "b and all mass components vanish but the matrix is still coupled");
      p.step(2, 0.0);
    } else {
      if (std::abs(m.mr) >= std::abs(by))
        throw Error(ErrorCode::ComplexEigenvalues,
                    "|M_r| = " + std::to_string(std::abs(m.mr)) + " >= |b_y| = " +
                        std::to_string(std::abs(by)));
      p.step(2, std::atanh(m.mr / by));
    }
  }

  res.transform = std::move(p.transform());
  res.final = Symplex4::unchecked(p.f());
  res.form = Form::BlockDiagonal;
  res.residual = off_block_max_abs(res.final.matrix);
  if (res.residual > post_scale(res.input, opt))
    res.issues.push_back({ErrorCode::PrecisionLoss,
                          "off-block residual " + std::to_string(res.residual)});
  res.closed_form = closed_form_check(in, sx, sb, res.final.state, opt.cross_tol);
  if (res.closed_form && !res.closed_form->agrees)
    res.issues.push_back({ErrorCode::PrecisionLoss,
                          "closed-form coefficients deviate by " +
                              std::to_string(res.closed_form->max_deviation)});
  return res;
}

DecoupleResult to_hamiltonian_form(const DecoupleResult& r, const DecoupleOptions& opt) {
  if (r.form != Form::BlockDiagonal)
    throw Error(ErrorCode::BranchMismatch, "Hamiltonian form needs a block-diagonal input");
  DecoupleResult res = r;
  Pipeline p(r.final.matrix, r.transform, opt);

  // (5) M_b -> 0 by a phase rotation.
  {
    const MassComponents m = p.masses();
    const EmeqState& s = p.s();
    p.step(0, 0.5 * folded_atan(2.0 * m.mb, norm2(s.e) - norm2(s.p), p.quad_tol()));
  }
  // (6) P_z -> 0 by a rotation about y. With P = 0 the same rotation clears E_x.
  {
    const EmeqState& s = p.s();
    if (std::hypot(s.p[0], s.p[2]) > p.lin_tol())
      p.step(8, -folded_atan(s.p[2], s.p[0], p.lin_tol()));
    else
      p.step(8, folded_atan(s.e[0], s.e[2], p.lin_tol()));
  }

  res.transform = std::move(p.transform());
  res.final = Symplex4::unchecked(p.f());
  res.form = Form::HamiltonianForm;
  res.residual = hamiltonian_residual(res.final.matrix);
  if (res.residual > post_scale(res.input, opt))
    throw Error(ErrorCode::PrecisionLoss,
                "Hamiltonian-form residual " + std::to_string(res.residual));
  return res;
}

DecoupleResult to_normal_form(const DecoupleResult& r, const DecoupleOptions& opt) {
  if (r.form != Form::HamiltonianForm)
    throw Error(ErrorCode::BranchMismatch, "normal form needs a Hamiltonian-form input");
  DecoupleResult res = r;
  const Matrix& f = r.final.matrix;
  const double zero = post_scale(r.input, opt);

  std::array<double, 2> exponent{0.0, 0.0};
  std::array<double, 2> omega{0.0, 0.0};
  bool all_stable = true;
  for (std::size_t k = 0; k < 2; ++k) {
    const double alpha = f(2 * k, 2 * k + 1);
    const double beta = -f(2 * k + 1, 2 * k);
    if (std::abs(alpha) <= zero || std::abs(beta) <= zero) {
      all_stable = false;
      res.issues.push_back({ErrorCode::UnstableBlock,
                            "block " + std::to_string(k) + " is degenerate (zero frequency)"});
      continue;
    }
    if (alpha * beta < 0.0) {
      all_stable = false;
      res.issues.push_back({ErrorCode::UnstableBlock,
                            "block " + std::to_string(k) + " has a real eigenvalue pair"});
      continue;
    }
    exponent[k] = 0.25 * std::log(alpha / beta);
    omega[k] = sgn(alpha) * std::sqrt(alpha * beta);
  }

  Pipeline p(f, r.transform, opt);
  const double s = exponent[0], t = exponent[1];
  p.step(3, s + t);
  p.step(4, s - t);

  res.transform = std::move(p.transform());
  res.final = Symplex4::unchecked(p.f());
  if (all_stable) {
    res.form = Form::NormalForm;
    res.block_omega = omega;
    res.residual = normal_residual(res.final.matrix);
  } else {
    res.form = Form::HamiltonianForm;
    res.residual = hamiltonian_residual(res.final.matrix);
  }
  return res;
}

DecoupleResult decouple_to_normal(const Matrix& f, const DecoupleOptions& opt) {
  return to_normal_form(to_hamiltonian_form(decouple_block_diagonal(f, opt), opt), opt);
}

ComplexMatrix4 diagonalizer_e0() {
  const IntMatrix4& g0 = gamma_int(0);
  const IntMatrix4& g3 = gamma_int(3);
  const IntMatrix4& g6 = gamma_int(6);
  ComplexMatrix4 e{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double re = (i == j ? 1.0 : 0.0) - g0[i][j];
      const double im = g3[i][j] + g6[i][j];
      e[i][j] = 0.5 * std::complex<double>(re, im);
    }
  return e;
}

Eigensystem diagonalize(const DecoupleResult& r) {
  if (r.form != Form::NormalForm || !r.block_omega)
    throw Error(ErrorCode::BranchMismatch, "diagonalization needs the normal form");
  const ComplexMatrix4 e0 = diagonalizer_e0();
  const Matrix& rinv = r.transform.r_inv;
  Eigensystem out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::complex<double> s = 0.0;
      for (int k = 0; k < 4; ++k) s += rinv(i, k) * e0[k][j];
      out.vectors[i][j] = s;
    }
  const auto& w = *r.block_omega;
  const std::complex<double> i1(0.0, 1.0);
  out.values = {i1 * w[0], -i1 * w[0], i1 * w[1], -i1 * w[1]};

  const Matrix& f = r.input;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      std::complex<double> fe = 0.0;
      for (int k = 0; k < 4; ++k) fe += f(i, k) * out.vectors[k][j];
      out.residual = std::max(out.residual, std::abs(fe - out.vectors[i][j] * out.values[j]));
    }
  return out;
}

namespace {

DecoupleResult finish_complex(DecoupleResult res, Pipeline& p, const DecoupleOptions& opt) {
  res.transform = std::move(p.transform());
  res.final = Symplex4::unchecked(p.f());
  res.form = Form::ComplexCanonical;
  res.residual = canonical_residual(res.final.matrix);
  const double k1 = res.invariants.k1, k2 = res.invariants.k2;
  res.rho = std::pow(k1 * k1 + 4.0 * std::abs(k2), 0.25);
  if (res.residual > post_scale(res.input, opt))
    res.issues.push_back({ErrorCode::PrecisionLoss,
                          "canonical-form residual " + std::to_string(res.residual)});
  return res;
}

DecoupleResult start_complex(const Matrix& f, const DecoupleOptions& opt, bool low) {
  DecoupleResult res = start_result(f, opt);
  if (!(res.invariants.k2 < 0.0))
    throw Error(ErrorCode::BranchMismatch, "complex branch needs K2 < 0");
  const EmeqState s = Symplex4::unchecked(res.input).state;
  const double e2 = s.energy * s.energy, p2 = norm2(s.p), ee2 = norm2(s.e);
  if (low && !(e2 < std::max(p2, ee2)))
    throw Error(ErrorCode::BranchMismatch, "low-energy branch needs energy^2 < max(P^2, E^2)");
  if (!low && !(e2 >= std::min(p2, ee2)))
    throw Error(ErrorCode::BranchMismatch, "intermediate branch needs energy^2 >= min(P^2, E^2)");
  return res;
}

}  // namespace

DecoupleResult complex_low_energy(const Matrix& f, const DecoupleOptions& opt) {
  DecoupleResult res = start_complex(f, opt, true);
  Pipeline p(res.input, res.transform, opt);
  const double lt = p.lin_tol();
  {
    const MassComponents m = p.masses();
    p.step(0, folded_atan(m.mg, m.mr, p.quad_tol()));
  }
  p.step(7, folded_atan(p.s().e[2], p.s().e[1], lt));
  p.step(9, -folded_atan(p.s().e[0], p.s().e[1], lt));
  p.step(2, rapidity(p.s().energy, p.s().e[1], lt, 4));
  p.step(3, -rapidity(p.s().p[0], p.s().b[1], lt, 5));
  p.step(1, rapidity(p.s().p[2], p.s().b[1], lt, 6));
  p.step(7, folded_atan(p.s().b[2], p.s().b[1], lt));
  p.step(9, -folded_atan(p.s().b[0], p.s().b[1], lt));
  p.step(8, folded_atan(p.s().e[0], p.s().e[2], lt));
  return finish_complex(std::move(res), p, opt);
}

DecoupleResult complex_intermediate(const Matrix& f, const DecoupleOptions& opt) {
  DecoupleResult res = start_complex(f, opt, false);
  Pipeline p(res.input, res.transform, opt);
  const double lt = p.lin_tol();
  {
    const MassComponents m = p.masses();
    // full-range atan2 picks the stationary angle that minimizes P^2
    const double num = 2.0 * m.mb, den = norm2(p.s().e) - norm2(p.s().p);
    const bool tiny = std::abs(num) <= p.quad_tol() && std::abs(den) <= p.quad_tol();
    p.step(0, tiny ? 0.0 : 0.5 * std::atan2(num, den));
  }
  p.step(7, folded_atan(p.s().p[2], p.s().p[1], lt));
  p.step(9, -folded_atan(p.s().p[0], p.s().p[1], lt));
  p.step(5, -rapidity(p.s().p[1], p.s().energy, lt, 4));
  p.step(7, folded_atan(p.s().b[2], p.s().b[1], lt));
  p.step(9, -folded_atan(p.s().b[0], p.s().b[1], lt));
  p.step(2, rapidity(p.s().energy, p.s().e[1], lt, 7));
  p.step(8, folded_atan(p.s().e[0], p.s().e[2], lt));
  return finish_complex(std::move(res), p, opt);
}

}  // namespace symdec
