#include "symdec/optics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace symdec {

namespace {

struct Frame {
  SymplecticTransform t;
  bool normal = false;
  std::optional<IterationStats> stats;
  std::vector<Issue> issues;
};

Frame decouple_symplex_part(const Matrix& ms, const OpticsOptions& opt) {
  const std::size_t n = ms.rows() / 2;
  Frame fr{SymplecticTransform::identity(ms.rows()), false, std::nullopt, {}};
  if (n == 1) return fr;
  if (n == 2) {
    DecoupleResult r = decouple_block_diagonal(ms, opt.decouple);
    fr.issues = r.issues;
    try {
      r = to_normal_form(to_hamiltonian_form(r, opt.decouple), opt.decouple);
      fr.issues = r.issues;
      fr.normal = r.form == Form::NormalForm;
    } catch (const Error& e) {
      fr.issues.push_back({e.code(), e.what()});
    }
    fr.t = std::move(r.transform);
    return fr;
  }
  JacobiOptions jo = opt.jacobi;
  jo.target = JacobiTarget::NormalForm;
  JacobiResult r = jacobi_decouple(ms, jo);
  fr.t = std::move(r.transform);
  fr.normal = r.normal;
  fr.stats = std::move(r.stats);
  fr.issues = std::move(r.issues);
  return fr;
}

double block_det(const Matrix& x, std::size_t k) {
  const std::size_t o = 2 * k;
  return x(o, o) * x(o + 1, o + 1) - x(o, o + 1) * x(o + 1, o);
}

}  // namespace

OpticsReport analyze_one_turn(const TransferMatrix& m, const OpticsOptions& opt) {
  const Matrix& M = m.m;
  if (!M.square() || M.rows() % 2 != 0 || M.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "one-turn matrix must be 2n x 2n");
  OpticsReport rep;
  rep.n_pairs = M.rows() / 2;
  rep.period = m.period;
  rep.symplectic_residual = symplectic_residual(M);
  const double mn = M.frobenius_norm();
  if (rep.symplectic_residual > opt.symplectic_tol * std::max(1.0, mn * mn))
    throw Error(ErrorCode::NotSymplectic,
                "||M J M^T - J|| = " + std::to_string(rep.symplectic_residual));

  const auto [ms, mc] = symplex_cosymplex_split(M);
  Frame fr = decouple_symplex_part(ms, opt);
  rep.transform = std::move(fr.t);
  rep.normal_frame = fr.normal;
  rep.jacobi_stats = std::move(fr.stats);
  rep.issues = std::move(fr.issues);

  rep.decoupled = apply_similarity(rep.transform, M);
  rep.decoupled_symplex = apply_similarity(rep.transform, ms);
  rep.off_block_residual = off_block_max_abs(rep.decoupled);
  rep.cosymplex_off_block_residual = off_block_max_abs(apply_similarity(rep.transform, mc));

  const Matrix& X = rep.decoupled_symplex;
  for (std::size_t k = 0; k < rep.n_pairs; ++k) {
    Tune t;
    const std::size_t o = 2 * k;
    t.cosine = 0.5 * (rep.decoupled(o, o) + rep.decoupled(o + 1, o + 1));
    const double det = block_det(X, k);
    if (det >= 0.0) {
      const double orient = X(o, o + 1) != 0.0 ? X(o, o + 1) : -X(o + 1, o);
      t.sine = (orient < 0.0 ? -1.0 : 1.0) * std::sqrt(det);
      t.stable = std::abs(t.cosine) <= 1.0 + opt.branch_tol;
    } else {
      t.sine = std::sqrt(-det);
      t.stable = false;
    }
    t.phase = std::atan2(t.sine, t.cosine);
    t.tune = std::abs(t.phase) / (2.0 * std::numbers::pi);
    t.branch_ambiguous = std::abs(t.sine) <= opt.branch_tol;
    if (!t.stable)
      rep.issues.push_back({ErrorCode::UnstableSystem, "block " + std::to_string(k) + " is unstable"});
    rep.tunes.push_back(t);
  }

  if (rep.n_pairs == 2) {
    const Matrix g12 = gamma(12);
    const Matrix& Mt = rep.decoupled;
    rep.cosine_sum_difference =
        std::array<double, 2>{0.5 * Mt.trace(), -0.25 * (Mt * g12 + g12 * Mt).trace()};
  }
  return rep;
}

Matrix matched_sigma(const OpticsReport& rep, std::span<const double> emittances) {
  if (emittances.size() != rep.n_pairs)
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(rep.n_pairs) + " emittances");
  const std::size_t dim = 2 * rep.n_pairs;
  const Matrix& X = rep.decoupled_symplex;
  Matrix sd(dim, dim);
  for (std::size_t k = 0; k < rep.n_pairs; ++k) {
    const Tune& t = rep.tunes[k];
    if (!t.stable)
      throw Error(ErrorCode::UnstableSystem, "block " + std::to_string(k) + " is unstable");
    if (t.branch_ambiguous)
      throw Error(ErrorCode::BranchAmbiguity,
                  "block " + std::to_string(k) + " has a tune at 0 or 1/2; matched sigma is not unique");
    // sigma_k = -(eps / s) X_k J, which is eps * 1 in the normal frame.
    const std::size_t o = 2 * k;
    const double f = -emittances[k] / t.sine;
    const double x00 = X(o, o), x01 = X(o, o + 1), x10 = X(o + 1, o), x11 = X(o + 1, o + 1);
    sd(o, o) = -f * x01;
    sd(o, o + 1) = f * x00;
    sd(o + 1, o) = -f * x11;
    sd(o + 1, o + 1) = f * x10;
  }
  const Matrix& rinv = rep.transform.r_inv;
  Matrix sigma = rinv * sd * rinv.transpose();
  return 0.5 * (sigma + sigma.transpose());
}

Matrix matched_sigma(const TransferMatrix& m, std::span<const double> emittances,
                     const OpticsOptions& opt) {
  return matched_sigma(analyze_one_turn(m, opt), emittances);
}

EffectiveForce effective_force(const TransferMatrix& m, const OpticsOptions& opt) {
  const OpticsReport rep = analyze_one_turn(m, opt);
  const std::size_t dim = 2 * rep.n_pairs;
  const Matrix& X = rep.decoupled_symplex;
  const double tau = m.period;
  EffectiveForce out;
  Matrix fd(dim, dim);
  for (std::size_t k = 0; k < rep.n_pairs; ++k) {
    const Tune& t = rep.tunes[k];
    if (!t.stable)
      throw Error(ErrorCode::UnstableSystem, "block " + std::to_string(k) + " is unstable");
    const std::size_t o = 2 * k;
    if (t.branch_ambiguous) out.branch_ambiguity = true;
    if (t.sine != 0.0 && !(t.branch_ambiguous && t.cosine < 0.0)) {
      const double f = t.phase / (tau * t.sine);
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) fd(o + a, o + b) = f * X(o + a, o + b);
    } else if (t.cosine < 0.0) {
      // M block = -1: principal branch pi J.
      fd(o, o + 1) = std::numbers::pi / tau;
      fd(o + 1, o) = -std::numbers::pi / tau;
    }
  }
  out.force = rep.transform.r_inv * fd * rep.transform.r;
  out.reconstruction_residual = max_abs_diff(matrix_exponential(out.force, tau).m, m.m);
  return out;
}

Matrix propagate_sigma(const Matrix& sigma, const TransferMatrix& m) {
  if (sigma.rows() != m.m.rows() || sigma.cols() != m.m.cols())
    throw Error(ErrorCode::DimensionMismatch, "sigma and transfer matrix dimensions differ");
  return m.m * sigma * m.m.transpose();
}

std::array<double, 4> sigma_invariants(const Matrix& sigma) {
  return lax_invariants(sigma * symplectic_unit(sigma.rows() / 2));
}

namespace {

double bilinear(const std::array<double, 4>& psi, const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) s += psi[i] * a(i, j) * psi[j];
  return s;
}

}  // namespace

SpinorObservables spinor_observables(const std::array<double, 4>& psi, const Matrix& f) {
  if (f.rows() != 4 || f.cols() != 4) throw Error(ErrorCode::DimensionMismatch, "expected 4x4");
  const Matrix g0 = gamma(0);
  SpinorObservables out;
  for (int k = 0; k < 16; ++k) {
    const Matrix gk = gamma(k);
    out.f[static_cast<std::size_t>(k)] = 0.5 * bilinear(psi, g0 * gk);
    out.g[static_cast<std::size_t>(k)] = bilinear(psi, g0 * (gk * f + f * gk));
  }
  return out;
}

std::array<double, 6> cosymplex_g_closed_form(const std::array<double, 16>& f,
                                              const EmeqState& s) {
  const double en = s.energy;
  const Vec3& P = s.p;
  const Vec3& E = s.e;
  const Vec3& B = s.b;
  const Vec3 fp{f[1], f[2], f[3]}, fe{f[4], f[5], f[6]}, fb{f[7], f[8], f[9]};
  std::array<double, 6> g{};
  g[0] = 4.0 * (dot(P, fb) - dot(B, fp));
  g[1] = 4.0 * (-en * f[7] - B[0] * f[0] + P[2] * f[5] + E[1] * f[3] - P[1] * f[6] - E[2] * f[2]);
  g[2] = 4.0 * (-en * f[8] - B[1] * f[0] + P[0] * f[6] + E[2] * f[1] - P[2] * f[4] - E[0] * f[3]);
  g[3] = 4.0 * (-en * f[9] - B[2] * f[0] + P[1] * f[4] + E[0] * f[2] - P[0] * f[5] - E[1] * f[1]);
  g[4] = 4.0 * (dot(E, fb) - dot(B, fe));
  const RdmCoefficients c = to_coefficients(s);
  double g15 = 0.0;
  for (std::size_t k = 0; k < 10; ++k) g15 += c[k] * f[k];
  g[5] = 4.0 * g15;
  return g;
}

std::array<double, 6> cosymplex_gdot_exact(const std::array<double, 4>& psi, const Matrix& f) {
  const Matrix g0 = gamma(0);
  const Matrix f2 = f * f;
  std::array<double, 6> out{};
  for (int k = 10; k < 16; ++k) {
    const Matrix gk = gamma(k);
    out[static_cast<std::size_t>(k - 10)] = bilinear(psi, g0 * (gk * f2 - f2 * gk));
  }
  return out;
}

std::array<double, 6> cosymplex_gdot_closed_form(const std::array<double, 16>& f,
                                                 const EmeqState& s) {
  const MassComponents m = mass_components(s);
  const Vec3 b = aux_vectors(s).b;
  const Vec3 fp{f[1], f[2], f[3]}, fe{f[4], f[5], f[6]};
  std::array<double, 6> d{};
  d[0] = 8.0 * (m.mr * f[0] + dot(b, fe));
  d[1] = 8.0 * (m.mr * f[1] - m.mg * f[4] + b[1] * f[9] - b[2] * f[8]);
  d[2] = 8.0 * (m.mr * f[2] - m.mg * f[5] + b[2] * f[7] - b[0] * f[9]);
  d[3] = 8.0 * (m.mr * f[3] - m.mg * f[6] + b[0] * f[8] - b[1] * f[7]);
  d[4] = -8.0 * (m.mg * f[0] + dot(b, fp));
  d[5] = 0.0;
  return d;
}

}  // namespace symdec
