// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#include "sfq/lindblad.hpp"

#include "sfq/fock.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace sfq {

Mat dissipator_apply(const DissipatorTerm& term, const Mat& rho) {
  const auto d = rho.rows();
  if (term.op_left.rows() != d || term.op_right.rows() != d)
    throw std::invalid_argument("dissipator_apply: dimension mismatch");
  const Mat ba = term.op_right * term.op_left;
  return 0.5 * term.rate *
         (2.0 * term.op_left * rho * term.op_right - ba * rho - rho * ba);
}

ModeOps fock_mode_ops(int dim) {
  Mat a = annihilation(dim);
  Mat ad = a.adjoint();
  return ModeOps{std::move(a), std::move(ad)};
}

std::vector<DissipatorTerm> squeezed_bath_terms(const EffectiveParams& eff, const ModeOps& mode) {
  if (mode.lower.rows() != mode.raise.rows())
    throw std::invalid_argument("squeezed_bath_terms: mode operators must share dim");
  const double g0 = eff.gamma0;
  std::vector<DissipatorTerm> terms;
  terms.push_back({Cplx(g0 * (eff.n_sq + 1.0), 0.0), mode.lower, mode.raise});
  terms.push_back({Cplx(g0 * eff.n_sq, 0.0), mode.raise, mode.lower});
  terms.push_back({-g0 * eff.m_sq, mode.lower, mode.lower});
  terms.push_back({-g0 * std::conj(eff.m_sq), mode.raise, mode.raise});
  return terms;
}

void Generator::validate() const {
  const int d = dim();
  if (d < 2) throw std::invalid_argument("Generator: dim must be >= 2");
  if (h0.rows() != h0.cols()) throw std::invalid_argument("Generator: h0 must be square");
  for (const auto& dr : drives) {
    if (dr.op.rows() != d || dr.op.cols() != d)
      throw std::invalid_argument("Generator: drive dim mismatch");
    if (!dr.envelope) throw std::invalid_argument("Generator: drive envelope missing");
  }
  for (const auto& t : terms) {
    if (t.op_left.rows() != d || t.op_left.cols() != d || t.op_right.rows() != d ||
        t.op_right.cols() != d)
      throw std::invalid_argument("Generator: dissipator dim mismatch");
  }
}

// --------------------------- compiled RHS ------------------------------------
//
// Every operator appearing in the generators here is banded (ladder operators
// have bandwidth 1, two-phonon terms 2, Kerr parts 0), so the products in the
// right-hand side reduce to diagonal-shifted column operations: O(w d^2)
// instead of O(d^3) per application. Dense matrices fall back to gemm.

namespace {

struct BandedOp {
  int dim = 0;
  int lo = 0, hi = 0;                  // diagonals col-row in [-lo, hi]
  std::vector<std::vector<Cplx>> dia;  // dia[lo+d][i] = M(i, i+d)
  Mat dense;                           // fallback when not banded
  bool is_banded = false;

  static BandedOp compile(const Mat& m, int max_band = 8) {
    BandedOp op;
    op.dim = int(m.rows());
    int lo = 0, hi = 0;
    for (int i = 0; i < op.dim; ++i)
      for (int j = 0; j < op.dim; ++j)
        if (m(i, j) != Cplx(0.0, 0.0)) {
          lo = std::max(lo, i - j);
          hi = std::max(hi, j - i);
        }
    if (lo + hi > max_band) {
      op.dense = m;
      return op;
    }
    op.is_banded = true;
    op.lo = lo;
    op.hi = hi;
    op.dia.resize(lo + hi + 1);
    for (int d = -lo; d <= hi; ++d) {
      const int len = op.dim - std::abs(d);
      auto& v = op.dia[lo + d];
      v.resize(len);
      for (int k = 0; k < len; ++k) {
        const int i = d >= 0 ? k : k - d;
        v[k] = m(i, i + d);
      }
    }
    return op;
  }

  // out += scale * M * x
  void apply_left(const Mat& x, Mat& out, Cplx scale) const {
    if (!is_banded) {
      out.noalias() += scale * dense * x;
      return;
    }
    const int n = dim;
    for (int d = -lo; d <= hi; ++d) {
      const auto& v = dia[lo + d];
      const int len = int(v.size());
      const int i0 = d >= 0 ? 0 : -d;  // first row of this diagonal
      for (int c = 0; c < n; ++c) {
        Cplx* o = out.col(c).data();
        const Cplx* xi = x.col(c).data();
        for (int k = 0; k < len; ++k) o[i0 + k] += scale * v[k] * xi[i0 + k + d];
      }
    }
  }

  // out += scale * x * M
  void apply_right(const Mat& x, Mat& out, Cplx scale) const {
    if (!is_banded) {
      out.noalias() += scale * x * dense;
      return;
    }
    const int n = dim;
    for (int d = -lo; d <= hi; ++d) {
      const auto& v = dia[lo + d];
      const int len = int(v.size());
      const int i0 = d >= 0 ? 0 : -d;
      for (int k = 0; k < len; ++k) {
        const int i = i0 + k;       // row index in M
        const int j = i + d;        // col index in M
        out.col(j) += (scale * v[k]) * x.col(i);
      }
    }
  }
};

struct CompiledTerm {
  Cplx rate;
  BandedOp a, b, ba;
};

class RhsEngine {
 public:
  explicit RhsEngine(const Generator& g) : dim_(g.dim()) {
    h0_ = BandedOp::compile(g.h0);
    for (const auto& d : g.drives) drive_ops_.push_back(BandedOp::compile(d.op));
    envelopes_.reserve(g.drives.size());
    for (const auto& d : g.drives) envelopes_.push_back(d.envelope);
    for (const auto& t : g.terms) {
      CompiledTerm ct;
      ct.rate = t.rate;
      ct.a = BandedOp::compile(t.op_left);
      ct.b = BandedOp::compile(t.op_right);
      ct.ba = BandedOp::compile(t.op_right * t.op_left);
      terms_.push_back(std::move(ct));
    }
    scratch_ = Mat::Zero(dim_, dim_);
  }

  // out = -i[H(t), rho] + sum_k rate_k/2 (2 A rho B - BA rho - rho BA)
  void operator()(const Mat& rho, double t, Mat& out) {
    out.setZero();
    const Cplx mi(0.0, -1.0);
    h0_.apply_left(rho, out, mi);
    h0_.apply_right(rho, out, -mi);
    for (size_t k = 0; k < drive_ops_.size(); ++k) {
      const double f = envelopes_[k](t);
      if (f == 0.0) continue;
      drive_ops_[k].apply_left(rho, out, mi * f);
      drive_ops_[k].apply_right(rho, out, -mi * f);
    }
    for (const auto& term : terms_) {
      scratch_.setZero();
      term.b.apply_right(rho, scratch_, 1.0);           // rho B
      term.a.apply_left(scratch_, out, term.rate);      // + rate A rho B
      term.ba.apply_left(rho, out, -0.5 * term.rate);   // - rate/2 BA rho
      term.ba.apply_right(rho, out, -0.5 * term.rate);  // - rate/2 rho BA
    }
  }

  int dim() const { return dim_; }

 private:
  int dim_;
  BandedOp h0_;
  std::vector<BandedOp> drive_ops_;
  std::vector<std::function<double(double)>> envelopes_;
  std::vector<CompiledTerm> terms_;
  Mat scratch_;
};

// One RK4 pass over the sample grid. Returns false as soon as a non-finite
// entry appears (step too large), so unstable refinements abort cheaply.
bool rk4_run(RhsEngine& rhs, const Mat& rho0, const std::vector<double>& t_grid, double dt,
             std::vector<Mat>& samples) {
  const int d = rhs.dim();
  Mat rho = rho0;
  Mat k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
  samples.clear();
  samples.reserve(t_grid.size());
  double t = t_grid.front();
  samples.push_back(rho);
  for (size_t seg = 0; seg + 1 < t_grid.size(); ++seg) {
    const double t_end = t_grid[seg + 1];
    const double span = t_end - t;
    const long nsteps = std::max(1L, long(std::ceil(span / dt - 1e-12)));
    const double h = span / double(nsteps);
    for (long s = 0; s < nsteps; ++s) {
      rhs(rho, t, k1);
      tmp = rho + 0.5 * h * k1;
      rhs(tmp, t + 0.5 * h, k2);
      tmp = rho + 0.5 * h * k2;
      rhs(tmp, t + 0.5 * h, k3);
      tmp = rho + h * k3;
      rhs(tmp, t + h, k4);
      rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      rho = 0.5 * (rho + rho.adjoint()).eval();
      t += h;
    }
    t = t_end;
    if (!rho.allFinite()) return false;
    samples.push_back(rho);
  }
  return true;
}

double sample_distance(const std::vector<Mat>& a, const std::vector<Mat>& b,
                       const std::function<double(const Mat&)>& obs) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double dst = obs ? std::abs(obs(a[i]) - obs(b[i])) : (a[i] - b[i]).norm();
    worst = std::max(worst, dst);
  }
  return worst;
}

}  // namespace

Mat lindblad_rhs(const Generator& g, const Mat& rho, double t) {
  g.validate();
  if (rho.rows() != g.dim() || rho.cols() != g.dim())
    throw std::invalid_argument("lindblad_rhs: state dim mismatch");
  RhsEngine rhs(g);
  Mat out(g.dim(), g.dim());
  rhs(rho, t, out);
  return out;
}

double Trajectory::max_trace_err() const {
  double v = 0.0;
  for (const auto& d : diagnostics) v = std::max(v, d.trace_err);
  return v;
}

double Trajectory::max_herm_err() const {
  double v = 0.0;
  for (const auto& d : diagnostics) v = std::max(v, d.herm_err);
  return v;
}

double Trajectory::min_eigenvalue() const {
  double v = std::numeric_limits<double>::infinity();
  for (const auto& d : diagnostics) v = std::min(v, d.min_eig);
  return v;
}

Trajectory evolve(const Generator& g, const Mat& rho0, const std::vector<double>& t_grid,
                  const StepControl& ctl) {
  g.validate();
  if (t_grid.size() < 2) throw std::invalid_argument("evolve: need at least two sample times");
  for (size_t i = 0; i + 1 < t_grid.size(); ++i)
    if (!(t_grid[i] < t_grid[i + 1]))
      throw std::invalid_argument("evolve: sample times must be strictly increasing");
  if (rho0.rows() != g.dim() || rho0.cols() != g.dim())
    throw std::invalid_argument("evolve: state dim mismatch");

  RhsEngine rhs(g);
  const double span = t_grid.back() - t_grid.front();
  double dt = ctl.dt_init > 0.0 ? ctl.dt_init : span / 1024.0;

  std::vector<Mat> coarse, fine;
  bool have_coarse = rk4_run(rhs, rho0, t_grid, dt, coarse);
  int refinements = 0;
  bool converged = false;
  while (refinements < ctl.max_refinements) {
    ++refinements;
    dt *= 0.5;
    const bool ok = rk4_run(rhs, rho0, t_grid, dt, fine);
    if (ok && have_coarse && sample_distance(coarse, fine, ctl.observable) < ctl.tol) {
      converged = true;
      break;
    }
    have_coarse = ok;
    coarse.swap(fine);
  }
  if (!converged)
    throw ConvergenceError("evolve: step halving did not converge within " +
                           std::to_string(ctl.max_refinements) + " refinements");

  Trajectory traj;
  traj.times = t_grid;
  traj.states = std::move(fine);
  traj.refinements = refinements;
  traj.dt = dt;
  traj.diagnostics.resize(traj.states.size());
  for (size_t i = 0; i < traj.states.size(); ++i) {
    const Mat& rho = traj.states[i];
    auto& d = traj.diagnostics[i];
    d.trace_err = std::abs(rho.trace() - Cplx(1.0, 0.0));
    d.herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
    d.min_eig = es.eigenvalues().minCoeff();
  }
  return traj;
}

Generator rot_frame_generator(const ModelParams& p) {
  Generator g;
  g.h0 = hamiltonian_rot(p);
  if (p.gamma0 > 0.0) {
    const auto mode = fock_mode_ops(p.dim);
    g.terms.push_back({Cplx(p.gamma0, 0.0), mode.lower, mode.raise});
  }
  return g;
}

Generator lab_frame_generator(const ModelParams& p) {
  // The pump-period dynamics is integrated in the frame rotating at omega_p,
  // an exact diagonal transform of the lab Hamiltonian: the fast omega_a n
  // phases drop out while every counter-rotating pump term survives with
  // explicit 2 omega_p envelopes. Decay is frame-invariant.
  p.validate();
  const int d = p.dim;
  const Mat a = annihilation(d);
  const Mat a2 = a * a;
  const Mat n = number_op(d);
  const Cplx eth = std::exp(Cplx(0.0, p.theta));
  const Cplx i1(0.0, 1.0);
  Generator g;
  g.h0 = p.delta_a() * n + p.kerr * (n * n - n);
  Mat quad_c = std::conj(eth) * a2 + eth * a2.adjoint();          // e^{-i th} a^2 + h.c.
  Mat quad_s = i1 * (eth * a2.adjoint() - std::conj(eth) * a2);   // quadrature partner
  Mat diag = 2.0 * n + Mat::Identity(d, d);
  const double amp = p.drive_amp;
  const double wp2 = 2.0 * p.omega_p;
  g.drives.push_back({std::move(quad_c), [amp, wp2](double t) {
                        const double c = std::cos(wp2 * t);
                        return amp * c * c;
                      }});
  g.drives.push_back({std::move(quad_s), [amp, wp2](double t) {
                        return amp * std::cos(wp2 * t) * std::sin(wp2 * t);
                      }});
  g.drives.push_back({std::move(diag), [amp, wp2](double t) { return amp * std::cos(wp2 * t); }});
  if (p.gamma0 > 0.0) {
    g.terms.push_back({Cplx(p.gamma0, 0.0), a, a.adjoint()});
  }
  return g;
}

Generator effective_generator(const EffectiveParams& eff, int dim) {
  Generator g;
  g.h0 = hamiltonian_eff(eff, dim, EffFrame::ModeB);
  if (eff.gamma0 > 0.0) {
    const auto mode = fock_mode_ops(dim);
    g.terms = squeezed_bath_terms(eff, mode);
  }
  return g;
}

Trajectory evolve_lab_frame(const ModelParams& p, const Mat& rho0,
                            const std::vector<double>& t_grid, const StepControl& ctl) {
  return evolve(lab_frame_generator(p), rho0, t_grid, ctl);
}

}  // namespace sfq
