// Chern connection of an invariant Hermitian metric on a Calabi-Eckmann
// C-space, computed from explicit matrices.
//
// m^c is spanned by V_a, Vbar_a (fiber) and E_alpha, E_{-alpha} for the
// positive non-compact roots of both factors; l^c = s_1^c + s_2^c. Every
// element of g^c is split along m^c + l^c by solving for coordinates in the
// combined basis. The metric is the complex-bilinear extension of h.

#include <algorithm>
#include <cmath>

#include "hcf/error.hpp"
#include "hcf/flow_engine.hpp"
#include "hcf/hss_roots.hpp"

namespace hcf {

namespace {

const cplx kI(0.0, 1.0);

CMatrix unit(int n, int i, int j) {
  CMatrix m = CMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

CMatrix embed(const CMatrix& block, int offset, int total) {
  CMatrix m = CMatrix::Zero(total, total);
  m.block(offset, offset, block.rows(), block.cols()) = block;
  return m;
}

CMatrix bracket(const CMatrix& x, const CMatrix& y) {
  return x * y - y * x;
}

double max_abs_vec(const CVector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

struct FactorIndex {
  const RootRealization* roots = nullptr;
  int offset = 0;
  std::vector<int> pos;  // m-basis index of E_alpha
  std::vector<int> neg;  // m-basis index of E_{-alpha}
};

class ChernModel {
 public:
  ChernModel(const CERealization& ce, const InvariantMetric& metric);

  int dim_m() const { return static_cast<int>(mbasis_.size()); }

  CVector basis_vector(int idx) const { return CVector::Unit(dim_m(), idx); }
  CVector conj(const CVector& x) const { return conj_ * x.conjugate(); }
  cplx h(const CVector& x, const CVector& y) const { return (x.transpose() * gram_ * y)(0, 0); }

  CVector m_part(const CMatrix& x) const { return coords_all(x).head(dim_m()); }
  CMatrix l_part(const CMatrix& x) const;
  CMatrix to_matrix(const CVector& x) const;
  CVector bracket_m(const CVector& x, const CVector& y) const {
    return m_part(bracket(to_matrix(x), to_matrix(y)));
  }
  /// ad(U) restricted to m^c, columns in m-coordinates.
  CMatrix ad_on_m(const CMatrix& u) const;

  CMatrix lambda(const CVector& x) const;
  CVector torsion(const CVector& x, const CVector& y) const;
  CMatrix curvature(const CVector& x, const CVector& y) const;
  cplx second_ricci(const CVector& x, const CVector& ybar) const;
  cplx torsion_quadratic(const CVector& x, const CVector& ybar) const;

  const std::vector<int>& fiber10() const { return fiber10_; }
  const std::vector<int>& fiber01() const { return fiber01_; }
  const std::vector<int>& type10() const { return type10_; }
  const std::vector<FactorIndex>& factors() const { return factors_; }
  const std::vector<CMatrix>& lbasis() const { return lbasis_; }
  const std::vector<bool>& is10() const { return is10_; }
  const CMatrix& gram() const { return gram_; }
  double decomposition_residual() const { return decomposition_residual_; }
  double lambda_solve_residual() const { return lambda_solve_residual_; }
  int lambda_rank_deficiency() const { return lambda_rank_deficiency_; }

 private:
  CVector coords_all(const CMatrix& x) const;
  void solve_lambda();

  int size_ = 0;
  std::vector<CMatrix> mbasis_;
  std::vector<CMatrix> lbasis_;
  std::vector<bool> is10_;
  std::vector<int> fiber10_, fiber01_, type10_;
  std::vector<FactorIndex> factors_;
  Eigen::CompleteOrthogonalDecomposition<CMatrix> decomposition_;
  CMatrix conj_;
  CMatrix gram_;
  CMatrix inv_gram10_;  // inverse of g_{AB} = h(eps_A, conj eps_B)
  std::vector<CMatrix> lambda_;
  mutable double decomposition_residual_ = 0.0;
  double lambda_solve_residual_ = 0.0;
  int lambda_rank_deficiency_ = 0;
};

ChernModel::ChernModel(const CERealization& ce, const InvariantMetric& metric) {
  const RootRealization* blocks[2] = {&ce.block1, &ce.block2};
  size_ = ce.block1.N + ce.block2.N;
  const int k = ce.fiber.k;

  // Real basis b_r of f with Z_j = sum_r zf_coords[j](r) b_r.
  const std::vector<CMatrix> centers = {embed(ce.block1.Z, 0, size_),
                                        embed(ce.block2.Z, ce.block1.N, size_)};
  RMatrix zc(2, 2);
  for (int j = 0; j < 2; ++j) zc.row(j) = ce.structure.zf_coords[j].transpose();
  const RMatrix zc_inv = zc.inverse();
  std::vector<CMatrix> f_real;
  for (int r = 0; r < 2; ++r) f_real.push_back(zc_inv(r, 0) * centers[0] + zc_inv(r, 1) * centers[1]);
  const RMatrix& IF = ce.structure.IF;
  auto real_combo = [&](const RVector& coeffs) {
    CMatrix out = CMatrix::Zero(size_, size_);
    for (Eigen::Index r = 0; r < coeffs.size(); ++r) out += coeffs(r) * f_real[r];
    return out;
  };
  for (int a = 0; a < k; ++a) {
    const CMatrix x = f_real[a];
    const CMatrix ifx = real_combo(IF.col(a));
    fiber10_.push_back(static_cast<int>(mbasis_.size()));
    mbasis_.push_back(0.5 * (x - kI * ifx));
    is10_.push_back(true);
  }
  for (int a = 0; a < k; ++a) {
    const CMatrix x = f_real[a];
    const CMatrix ifx = real_combo(IF.col(a));
    fiber01_.push_back(static_cast<int>(mbasis_.size()));
    mbasis_.push_back(0.5 * (x + kI * ifx));
    is10_.push_back(false);
  }
  int offset = 0;
  for (const RootRealization* r : blocks) {
    FactorIndex fi;
    fi.roots = r;
    fi.offset = offset;
    for (const auto& e : r->E_pos) {
      fi.pos.push_back(static_cast<int>(mbasis_.size()));
      mbasis_.push_back(embed(e, offset, size_));
      is10_.push_back(true);
    }
    for (const auto& e : r->E_neg) {
      fi.neg.push_back(static_cast<int>(mbasis_.size()));
      mbasis_.push_back(embed(e, offset, size_));
      is10_.push_back(false);
    }
    factors_.push_back(fi);

    // s^c: sl(p) + sl(q) on the diagonal blocks.
    const int N = r->N;
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        if (i != j && (i < r->p) == (j < r->p)) lbasis_.push_back(embed(unit(N, i, j), offset, size_));
      }
    }
    for (int i = 0; i + 1 < r->p; ++i) {
      lbasis_.push_back(embed(unit(N, i, i) - unit(N, i + 1, i + 1), offset, size_));
    }
    for (int i = r->p; i + 1 < N; ++i) {
      lbasis_.push_back(embed(unit(N, i, i) - unit(N, i + 1, i + 1), offset, size_));
    }
    offset += N;
  }
  for (int i = 0; i < dim_m(); ++i) {
    if (is10_[i]) type10_.push_back(i);
  }

  const int total = dim_m() + static_cast<int>(lbasis_.size());
  CMatrix frame(size_ * size_, total);
  for (int i = 0; i < dim_m(); ++i) frame.col(i) = mbasis_[i].reshaped();
  for (std::size_t i = 0; i < lbasis_.size(); ++i) frame.col(dim_m() + i) = lbasis_[i].reshaped();
  decomposition_.compute(frame);

  conj_ = CMatrix(dim_m(), dim_m());
  for (int i = 0; i < dim_m(); ++i) conj_.col(i) = m_part(-mbasis_[i].adjoint());

  // Bilinear metric: H on the fiber, -h_j kappa_j on n_j.
  gram_ = CMatrix::Zero(dim_m(), dim_m());
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      gram_(fiber10_[a], fiber01_[b]) = metric.H(a, b);
      gram_(fiber01_[b], fiber10_[a]) = metric.H(a, b);
    }
  }
  for (std::size_t f = 0; f < factors_.size(); ++f) {
    const auto& fi = factors_[f];
    std::vector<int> idx = fi.pos;
    idx.insert(idx.end(), fi.neg.begin(), fi.neg.end());
    const int N = fi.roots->N;
    for (int x : idx) {
      for (int y : idx) {
        const CMatrix bx = mbasis_[x].block(fi.offset, fi.offset, N, N);
        const CMatrix by = mbasis_[y].block(fi.offset, fi.offset, N, N);
        gram_(x, y) = -metric.h_base[f] * fi.roots->killing_c(bx, by);
      }
    }
  }

  CMatrix g10(type10_.size(), type10_.size());
  for (std::size_t A = 0; A < type10_.size(); ++A) {
    for (std::size_t B = 0; B < type10_.size(); ++B) {
      g10(A, B) = h(basis_vector(type10_[A]), conj(basis_vector(type10_[B])));
    }
  }
  inv_gram10_ = g10.inverse();

  solve_lambda();
}

CVector ChernModel::coords_all(const CMatrix& x) const {
  const CVector flat = x.reshaped();
  CVector c = decomposition_.solve(flat);
  CVector back = CVector::Zero(flat.size());
  for (int i = 0; i < dim_m(); ++i) back += c(i) * mbasis_[i].reshaped();
  for (std::size_t i = 0; i < lbasis_.size(); ++i) back += c(dim_m() + i) * lbasis_[i].reshaped();
  decomposition_residual_ = std::max(decomposition_residual_, max_abs_vec(back - flat));
  return c;
}

CMatrix ChernModel::l_part(const CMatrix& x) const {
  const CVector c = coords_all(x);
  CMatrix out = CMatrix::Zero(size_, size_);
  for (std::size_t i = 0; i < lbasis_.size(); ++i) out += c(dim_m() + i) * lbasis_[i];
  return out;
}

CMatrix ChernModel::to_matrix(const CVector& x) const {
  CMatrix out = CMatrix::Zero(size_, size_);
  for (int i = 0; i < dim_m(); ++i) {
    if (x(i) != 0.0) out += x(i) * mbasis_[i];
  }
  return out;
}

CMatrix ChernModel::ad_on_m(const CMatrix& u) const {
  CMatrix out(dim_m(), dim_m());
  for (int c = 0; c < dim_m(); ++c) out.col(c) = m_part(bracket(u, mbasis_[c]));
  return out;
}

// For each basis vector x, Lambda(x) is the unique endomorphism of m^c that
// preserves m^{10} and m^{01}, is skew for h, and makes the (1,1) torsion
// vanish. Given type preservation the torsion condition splits by type into
// Lambda(A) Bbar = [A, Bbar]^{01} (A of type (1,0)) and its conjugate.
void ChernModel::solve_lambda() {
  const int d = dim_m();
  const int unknowns = d * d;
  auto var = [d](int r, int c) { return r + d * c; };

  lambda_.clear();
  for (int x = 0; x < d; ++x) {
    std::vector<CVector> rows;
    std::vector<cplx> rhs;
    auto new_row = [&]() -> CVector& {
      rows.emplace_back(CVector::Zero(unknowns));
      rhs.push_back(0.0);
      return rows.back();
    };
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        if (is10_[r] != is10_[c]) new_row()(var(r, c)) = 1.0;
      }
    }
    for (int c = 0; c < d; ++c) {
      for (int e = c; e < d; ++e) {
        CVector& row = new_row();
        for (int r = 0; r < d; ++r) {
          row(var(r, c)) += gram_(r, e);
          row(var(r, e)) += gram_(c, r);
        }
      }
    }
    for (int c = 0; c < d; ++c) {
      if (is10_[c] == is10_[x]) continue;
      const CVector target = bracket_m(basis_vector(x), basis_vector(c));
      for (int r = 0; r < d; ++r) {
        if (is10_[r] != is10_[c]) continue;
        new_row()(var(r, c)) = 1.0;
        rhs.back() = target(r);
      }
    }

    CMatrix system(rows.size(), unknowns);
    CVector b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      system.row(i) = rows[i].transpose();
      b(i) = rhs[i];
    }
    Eigen::ColPivHouseholderQR<CMatrix> qr(system);
    qr.setThreshold(1e-12);
    lambda_rank_deficiency_ = std::max(lambda_rank_deficiency_, unknowns - static_cast<int>(qr.rank()));
    const CVector sol = qr.solve(b);
    lambda_solve_residual_ = std::max(lambda_solve_residual_, max_abs_vec(system * sol - b));
    lambda_.push_back(sol.reshaped(d, d));
  }
}

CMatrix ChernModel::lambda(const CVector& x) const {
  CMatrix out = CMatrix::Zero(dim_m(), dim_m());
  for (int i = 0; i < dim_m(); ++i) {
    if (x(i) != 0.0) out += x(i) * lambda_[i];
  }
  return out;
}

CVector ChernModel::torsion(const CVector& x, const CVector& y) const {
  return lambda(x) * y - lambda(y) * x - bracket_m(x, y);
}

CMatrix ChernModel::curvature(const CVector& x, const CVector& y) const {
  const CMatrix lx = lambda(x);
  const CMatrix ly = lambda(y);
  const CMatrix xy = bracket(to_matrix(x), to_matrix(y));
  return lx * ly - ly * lx - lambda(m_part(xy)) - ad_on_m(l_part(xy));
}

// S(X, Ybar) = sum_{A,B} g^{BA} h(R(eps_A, conj eps_B) X, Ybar).
cplx ChernModel::second_ricci(const CVector& x, const CVector& ybar) const {
  cplx out = 0.0;
  for (std::size_t A = 0; A < type10_.size(); ++A) {
    for (std::size_t B = 0; B < type10_.size(); ++B) {
      const cplx weight = inv_gram10_(B, A);
      if (std::abs(weight) == 0.0) continue;
      const CMatrix R = curvature(basis_vector(type10_[A]), conj(basis_vector(type10_[B])));
      out += weight * h(R * x, ybar);
    }
  }
  return out;
}

// Q(X, Ybar) = -1/2 g^{nm} g^{sp} h(T(eps_m, eps_p), Ybar) h(T(conj eps_n, conj eps_s), X).
cplx ChernModel::torsion_quadratic(const CVector& x, const CVector& ybar) const {
  const std::size_t n10 = type10_.size();
  cplx out = 0.0;
  std::vector<std::vector<cplx>> t_y(n10, std::vector<cplx>(n10));
  std::vector<std::vector<cplx>> t_x(n10, std::vector<cplx>(n10));
  for (std::size_t a = 0; a < n10; ++a) {
    for (std::size_t b = 0; b < n10; ++b) {
      const CVector ea = basis_vector(type10_[a]);
      const CVector eb = basis_vector(type10_[b]);
      t_y[a][b] = h(torsion(ea, eb), ybar);
      t_x[a][b] = h(torsion(conj(ea), conj(eb)), x);
    }
  }
  for (std::size_t m = 0; m < n10; ++m) {
    for (std::size_t n = 0; n < n10; ++n) {
      for (std::size_t p = 0; p < n10; ++p) {
        for (std::size_t s = 0; s < n10; ++s) {
          out += inv_gram10_(n, m) * inv_gram10_(s, p) * t_y[m][p] * t_x[n][s];
        }
      }
    }
  }
  return -0.5 * out;
}

}  // namespace

ResidualReport verify_chern_tensors(const CERealization& ce, const InvariantMetric& metric) {
  if (metric.h_base.size() != 2 || metric.H.rows() != ce.fiber.k || metric.H.cols() != ce.fiber.k) {
    throw Error(ErrorCode::ShapeMismatch, "metric must have 2 base coefficients and a " +
                                              std::to_string(ce.fiber.k) + "x" +
                                              std::to_string(ce.fiber.k) + " fiber block");
  }
  const CSpaceModel model = ce_model(ce, metric.h_base[0], metric.h_base[1]);
  validate_metric(model, metric);

  const ChernModel cm(ce, metric);
  const int d = cm.dim_m();
  const auto& F = cm.factors();
  auto e = [&](int idx) { return cm.basis_vector(idx); };
  auto upd = [](double& acc, double v) { acc = std::max(acc, v); };

  ResidualReport report;

  // Defining properties of the solved connection.
  double skew = 0.0, type = 0.0, tor11 = 0.0, equiv = 0.0, metric_inv = 0.0;
  for (int x = 0; x < d; ++x) {
    const CMatrix L = cm.lambda(e(x));
    upd(skew, max_abs(L.transpose() * cm.gram() + cm.gram() * L));
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        if (cm.is10()[r] != cm.is10()[c]) upd(type, std::abs(L(r, c)));
      }
    }
    for (int y = 0; y < d; ++y) {
      if (cm.is10()[x] && !cm.is10()[y]) upd(tor11, max_abs_vec(cm.torsion(e(x), e(y))));
    }
  }
  for (const CMatrix& u : cm.lbasis()) {
    const CMatrix adu = cm.ad_on_m(u);
    upd(metric_inv, max_abs(adu.transpose() * cm.gram() + cm.gram() * adu));
    for (int x = 0; x < d; ++x) {
      const CMatrix lhs = cm.lambda(adu * e(x));
      const CMatrix L = cm.lambda(e(x));
      upd(equiv, max_abs(lhs - (adu * L - L * adu)));
    }
  }
  report.add("Lambda solve residual", cm.lambda_solve_residual());
  report.add("Lambda uniqueness (rank deficiency)", cm.lambda_rank_deficiency());
  report.add("Lambda skew for h", skew);
  report.add("Lambda preserves m10/m01", type);
  report.add("T(m10, m01) = 0", tor11);
  report.add("h ad(l)-invariant", metric_inv);
  report.add("Lambda ad(l)-equivariant", equiv);

  // H_alpha data: m-part, (0,1) fiber part and its conjugate.
  struct RootData {
    int factor = 0;
    int a = 0;
    CVector hm;
    CVector h01;
  };
  std::vector<RootData> roots;
  double coeff = 0.0;
  for (std::size_t f = 0; f < F.size(); ++f) {
    const int N = F[f].roots->N;
    for (std::size_t a = 0; a < F[f].pos.size(); ++a) {
      RootData rd;
      rd.factor = static_cast<int>(f);
      rd.a = static_cast<int>(a);
      CMatrix Hfull = CMatrix::Zero(ce.block1.N + ce.block2.N, ce.block1.N + ce.block2.N);
      Hfull.block(F[f].offset, F[f].offset, N, N) = F[f].roots->H[a];
      rd.hm = cm.m_part(Hfull);
      rd.h01 = CVector::Zero(d);
      for (int idx : cm.fiber01()) rd.h01(idx) = rd.hm(idx);
      for (std::size_t b = 0; b < cm.fiber01().size(); ++b) {
        upd(coeff, std::abs(rd.h01(cm.fiber01()[b]) - ce.fiber.c[f](b)));
      }
      roots.push_back(rd);
    }
  }
  report.add("H_a^{01} coordinates - c^j", coeff);
  report.add("g^c = m^c + l^c decomposition", cm.decomposition_residual());

  auto hi = [&](const RootData& rd) { return metric.h_base[rd.factor]; };
  auto pos = [&](const RootData& rd) { return e(F[rd.factor].pos[rd.a]); };
  auto neg = [&](const RootData& rd) { return e(F[rd.factor].neg[rd.a]); };

  double la = 0.0, lb = 0.0, lc = 0.0, ld = 0.0;
  double ta = 0.0, tb = 0.0, tc = 0.0;
  double ra = 0.0, rb = 0.0, rc = 0.0, rd_ = 0.0;
  for (const auto& A : roots) {
    const CMatrix LA = cm.lambda(pos(A));
    for (const auto& B : roots) {
      if (A.factor == B.factor) {
        upd(la, max_abs_vec(LA * pos(B)));
        upd(ta, max_abs_vec(cm.torsion(pos(A), pos(B))));
        if (A.a != B.a) upd(lb, max_abs_vec(LA * neg(B)));
      } else {
        upd(la, max_abs_vec(LA * pos(B)));
        upd(la, max_abs_vec(LA * neg(B)));
        upd(ta, max_abs_vec(cm.torsion(pos(A), pos(B))));
      }
    }
    upd(lb, max_abs_vec(LA * neg(A) - A.h01));
    for (int w : cm.fiber10()) {
      const cplx hw = cm.h(e(w), A.hm);
      upd(lc, max_abs_vec(LA * e(w) - (hw / hi(A)) * pos(A)));
      upd(tb, max_abs_vec(cm.torsion(e(w), pos(A)) + (hw / hi(A)) * pos(A)));
    }
    for (int wbar : cm.fiber01()) upd(la, max_abs_vec(LA * e(wbar)));

    // Curvature along R(E_a, conj E_a).
    const CVector conj_pos = cm.conj(pos(A));
    const CMatrix R = cm.curvature(pos(A), conj_pos);
    const CMatrix Lconj = cm.lambda(conj_pos);
    for (const auto& B : roots) {
      if (B.factor == A.factor) {
        const cplx beta_h = F[B.factor].roots->root_value(
            F[B.factor].roots->roots_plus_n[B.a], F[A.factor].roots->H[A.a]);
        upd(ra, max_abs_vec(R * pos(B) - (LA * (Lconj * pos(B)) + beta_h * pos(B))));
      } else {
        upd(rb, max_abs_vec(R * pos(B)));
      }
    }
    for (int w : cm.fiber10()) {
      const cplx hw = cm.h(e(w), A.hm);
      upd(rc, max_abs_vec(R * e(w) - (hw / hi(A)) * cm.conj(A.h01)));
    }
  }
  std::vector<int> fiber_all = cm.fiber10();
  fiber_all.insert(fiber_all.end(), cm.fiber01().begin(), cm.fiber01().end());
  for (int v : fiber_all) {
    upd(ld, max_abs(cm.lambda(e(v)) - cm.ad_on_m(cm.to_matrix(e(v)))));
    for (int v2 : fiber_all) upd(rd_, max_abs(cm.curvature(e(v), e(v2))));
  }
  for (int w : cm.fiber10()) {
    for (int w2 : cm.fiber10()) upd(tc, max_abs_vec(cm.torsion(e(w), e(w2))));
  }
  report.add("Lambda a: Lambda(E_a) kills E_b, E_+-g, wbar", la);
  report.add("Lambda b: Lambda(E_a) E_-b = delta_ab H_a^{01}", lb);
  report.add("Lambda c: Lambda(E_a) w = h(w,H_a)/h_i E_a", lc);
  report.add("Lambda d: Lambda(v) = ad(v)", ld);
  report.add("Torsion a: T(E_a,E_g) = T(E_a,E_b) = 0", ta);
  report.add("Torsion b: T(w,E_a) = -h(w,H_a)/h_i E_a", tb);
  report.add("Torsion c: T(w,w') = 0", tc);
  report.add("Curvature a: R(E_a,conj E_a) E_b", ra);
  report.add("Curvature b: R(E_a,conj E_a) E_g = 0", rb);
  report.add("Curvature c: R(E_a,conj E_a) w", rc);
  report.add("Curvature d: R(v1,v2) = 0", rd_);

  // S, Q and K.
  double s_root = 0.0, q_root = 0.0, k_root = 0.0, k_offroot = 0.0;
  for (const auto& B : roots) {
    const cplx hh = cm.h(cm.conj(B.h01), B.h01);
    const CVector pb = pos(B);
    const CVector pbar = cm.conj(pb);
    const cplx S = cm.second_ricci(pb, pbar);
    const cplx Q = cm.torsion_quadratic(pb, pbar);
    upd(s_root, std::abs(S - (-hh / hi(B) + 0.5)));
    upd(q_root, std::abs(Q - (-hh / hi(B))));
    upd(k_root, std::abs(-S + Q + 0.5));
    for (const auto& C : roots) {
      if (&C == &B) continue;
      const CVector cbar = cm.conj(pos(C));
      upd(k_offroot, std::abs(-cm.second_ricci(pb, cbar) + cm.torsion_quadratic(pb, cbar)));
    }
  }
  report.add("S(E_b, conj E_b) = -h(conj H^{01}, H^{01})/h_i + 1/2", s_root);
  report.add("Q(E_b, conj E_b) = -h(conj H^{01}, H^{01})/h_i", q_root);
  report.add("K(E_a, conj E_a) = -1/2", k_root);
  report.add("K(E_a, conj E_b) = 0, a != b", k_offroot);

  const KTensor kt = k_tensor(model, metric);
  double s_fiber = 0.0, q_fiber = 0.0, k_fiber = 0.0, k_mixed = 0.0;
  const auto& f10 = cm.fiber10();
  for (std::size_t a = 0; a < f10.size(); ++a) {
    for (std::size_t b = 0; b < f10.size(); ++b) {
      const CVector va = e(f10[a]);
      const CVector vbbar = cm.conj(e(f10[b]));
      cplx expected = 0.0;
      for (const auto& A : roots) {
        const double hj = hi(A);
        expected += cm.h(va, A.hm) * std::conj(cm.h(e(f10[b]), A.hm)) / (hj * hj);
      }
      const cplx S = cm.second_ricci(va, vbbar);
      const cplx Q = cm.torsion_quadratic(va, vbbar);
      upd(s_fiber, std::abs(S - expected));
      upd(q_fiber, std::abs(Q));
      upd(k_fiber, std::abs(-S + Q - kt.fiber(a, b)));
    }
    for (const auto& B : roots) {
      const CVector va = e(f10[a]);
      const CVector pb = pos(B);
      upd(q_fiber, std::abs(cm.torsion_quadratic(va, cm.conj(pb))));
      upd(q_fiber, std::abs(cm.torsion_quadratic(pb, cm.conj(va))));
      upd(k_mixed, std::abs(-cm.second_ricci(va, cm.conj(pb)) + cm.torsion_quadratic(va, cm.conj(pb))));
      upd(k_mixed, std::abs(-cm.second_ricci(pb, cm.conj(va)) + cm.torsion_quadratic(pb, cm.conj(va))));
    }
  }
  report.add("S(V_a, conj V_b) = sum h(V_a,H)conj h(V_b,H)/h_j^2", s_fiber);
  report.add("Q(f, f) = Q(f, n) = 0", q_fiber);
  report.add("K(f, n) = 0", k_mixed);
  report.add("K(V_a, conj V_b) = -(H Gamma H)_ab", k_fiber);
  return report;
}

}  // namespace hcf
