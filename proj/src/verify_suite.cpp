#include "gvna/verify_suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "gvna/errors.hpp"
#include "gvna/graded_tensor.hpp"
#include "gvna/presets.hpp"
#include "gvna/type_table.hpp"

namespace gvna {

namespace {

const std::vector<std::string> kSingles = {"clifford:3", "diag:4:2,1,3,4", "mf:1,1", "mf:2,1", "mf:2,2",
                                           "sp:1",       "sp:2",           "sp:3",   "trivial:mf:1,1"};
const std::vector<std::string> kPairPresets = {"sp:1", "sp:2", "mf:1,1", "mf:2,1", "diag:4:2,1,3,4"};
const std::vector<std::pair<std::size_t, std::size_t>> kSpPairs = {{1, 1}, {2, 1}, {2, 2}, {2, 3}};

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

class Check {
 public:
  explicit Check(const Tolerances& tol) : tol_(tol) {}

  const Tolerances& tol() const { return tol_; }
  double worst() const { return worst_; }
  bool ok() const { return ok_; }
  const std::string& failure() const { return failure_; }

  void residual(double r, double limit, const std::string& where) {
    worst_ = std::max(worst_, r);
    if (!(r <= limit)) fail(where + ": residual " + short_number(r) + " > " + short_number(limit));
  }
  void residual(double r, const std::string& where) { residual(r, tol_.eq, where); }
  void expect(bool cond, const std::string& where) {
    if (!cond) fail(where);
  }

 private:
  void fail(const std::string& msg) {
    if (ok_) failure_ = msg;
    ok_ = false;
  }

  Tolerances tol_;
  double worst_ = 0.0;
  bool ok_ = true;
  std::string failure_;
};

class Suite {
 public:
  explicit Suite(const VerifyOptions& options) : options_(options) {}

  const GradedAlgebra& preset(const std::string& name) {
    auto it = presets_.find(name);
    if (it == presets_.end()) it = presets_.emplace(name, build_preset(name, options_.tol)).first;
    return it->second;
  }

  void run(std::string id, std::string statement, const std::function<std::string(Check&)>& body) {
    CaseResult result;
    result.id = std::move(id);
    result.statement = std::move(statement);
    Check check(options_.tol);
    try {
      std::string summary = body(check);
      result.passed = check.ok();
      result.detail = check.ok() ? summary : check.failure();
    } catch (const NumericalInconsistency& e) {
      result.numerical_error = true;
      result.detail = std::string("numerical inconsistency: ") + e.what();
    } catch (const std::exception& e) {
      result.detail = std::string("error: ") + e.what();
    }
    result.max_residual = check.worst();
    results_.push_back(std::move(result));
  }

  std::uint64_t seed() const { return options_.seed; }
  std::vector<CaseResult> take() {
    std::sort(results_.begin(), results_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return std::move(results_);
  }

 private:
  VerifyOptions options_;
  std::map<std::string, GradedAlgebra> presets_;
  std::vector<CaseResult> results_;
};

std::string pair_name(const std::string& a, const std::string& b) { return a + " ⊗̂ " + b; }

VNAlgebra closed(const MatSubspace& s, const Tolerances& tol) { return VNAlgebra::from_closed_space(s, {}, tol); }

bool all_commute(const std::vector<CMatrix>& xs, const std::vector<CMatrix>& ys, double tol) {
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      if ((x * y - y * x).norm() > tol * std::max(1.0, x.norm() * y.norm())) return false;
    }
  }
  return true;
}

CVector random_unit_vector(std::size_t d, Rng& rng) {
  CVector z(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.complex_normal();
  return z / z.norm();
}

// ---------------------------------------------------------------------------

void algebra_cases(Suite& s) {
  s.run("A01-algebra-closure", "R is a unital *-algebra and R'' = R", [&](Check& c) {
    for (const auto& name : kSingles) {
      const auto& g = s.preset(name);
      c.residual(algebra_invariant_residual(g.alg()), name + " closure");
      if (g.hilbert_dim() <= 8) c.expect(double_commutant_holds(g.alg()), name + " double commutant");
    }
    return std::to_string(kSingles.size()) + " algebras";
  });

  s.run("A02-grading-invariants", "Γ = Γ*, Γ² = I, ΓRΓ = R", [&](Check& c) {
    for (const auto& name : kSingles) c.residual(grading_residual(s.preset(name)), name);
    return std::to_string(kSingles.size()) + " graded algebras";
  });

  s.run("A03-even-odd-split", "R = R^(0) ⊕ R^(1), θ = ±1 on R^(σ)", [&](Check& c) {
    for (const auto& name : kSingles) {
      const auto& g = s.preset(name);
      const auto& sp = g.split();
      c.expect(sp.even.dim() + sp.odd.dim() == g.alg().dim(), name + " dimensions");
      for (const auto& b : sp.even.basis()) c.residual((g.gamma() * b * g.gamma() - b).norm(), name + " even");
      for (const auto& b : sp.odd.basis()) c.residual((g.gamma() * b * g.gamma() + b).norm(), name + " odd");
      std::vector<CMatrix> both = sp.even.basis();
      both.insert(both.end(), sp.odd.basis().begin(), sp.odd.basis().end());
      c.residual(subspace_residual(orthonormalize(both, c.tol().rank), g.alg().space()), name + " reconstruction");
    }
    return std::to_string(kSingles.size()) + " graded algebras";
  });
}

void grading_cases(Suite& s) {
  s.run("B01-twist-algebra", "L = R^(0) + R^(1)Γ is a graded algebra with L^(0) = R^(0), L^(1) = R^(1)Γ",
        [&](Check& c) {
          for (const auto& name : kSingles) {
            const auto& g = s.preset(name);
            const GradedAlgebra l = twist(g);
            c.residual(algebra_invariant_residual(l.alg()), name + " L closure");
            c.residual(grading_residual(l), name + " L grading");
            c.residual(subspace_residual(l.split().even, g.split().even), name + " L^(0)");
            std::vector<CMatrix> odd_gamma;
            for (const auto& b : g.split().odd.basis()) odd_gamma.push_back(b * g.gamma());
            c.residual(subspace_residual(l.split().odd, extend_span(MatSubspace(g.hilbert_dim()), odd_gamma, c.tol().rank)),
                       name + " L^(1)");
            c.residual(subspace_residual(twist(l).alg().space(), g.alg().space()), name + " involution");
          }
          return std::to_string(kSingles.size()) + " graded algebras";
        });

  s.run("B02-v-conjugation", "V*AV = A^(0) + iA^(1)Γ with V = (1−i)/2 I + (1+i)/2 Γ", [&](Check& c) {
    for (const auto& name : kSingles) {
      const auto& g = s.preset(name);
      const auto vc = v_conjugate(g);
      c.residual(vc.formula_residual, name + " formula");
      c.residual(subspace_residual(vc.image.space(), twist(g).alg().space()), name + " image = L");
    }
    return std::to_string(kSingles.size()) + " graded algebras";
  });

  s.run("B03-center-graded", "Z(R) is closed under Ad_Γ", [&](Check& c) {
    for (const auto& name : kSingles) {
      const auto& g = s.preset(name);
      c.residual(grading_residual(graded_center(g)), name);
    }
    return std::to_string(kSingles.size()) + " centers";
  });

  s.run("B04-center-inclusions", "Z(R) ⊆ Z(R^(0)) if Z(R) ∩ R^(1) = 0, Z(R^(0)) ⊆ Z(R) otherwise", [&](Check& c) {
    std::size_t tested = 0;
    for (const auto& name : kSingles) {
      const auto& g = s.preset(name);
      if (!is_central(g)) continue;
      ++tested;
      const auto b = odd_center_line(g);
      if (!b) {
        c.expect(all_commute(g.alg().center_space().basis(), g.split().even.basis(), c.tol().eq), name + " Z(R) ⊆ Z(R^(0))");
      } else {
        const VNAlgebra even = closed(g.split().even, c.tol());
        for (const auto& z : even.center_space().basis()) {
          c.residual(membership_residual(g.alg().center_space(), z), name + " Z(R^(0)) ⊆ Z(R)");
        }
      }
    }
    return std::to_string(tested) + " central algebras";
  });

  s.run("B05-odd-center-line", "Z(R) ∩ R^(1) = Cb with b an odd central symmetry, or 0", [&](Check& c) {
    for (const auto& name : kSingles) {
      const auto& g = s.preset(name);
      if (!is_central(g)) continue;
      const auto b = odd_center_line(g);
      const bool expect_line = name.rfind("sp:", 0) == 0 || name == "clifford:3";
      c.expect(b.has_value() == expect_line, name + " presence of odd central line");
      if (!b) continue;
      c.residual(membership_residual(g.alg().center_space(), *b), name + " central");
      c.residual((g.gamma() * *b * g.gamma() + *b).norm(), name + " odd");
      c.expect(is_self_adjoint_unitary(*b, c.tol().eq), name + " self-adjoint unitary");
    }
    return "central presets";
  });

  s.run("B06-abelian-in-R", "abelian projections of R^(0) are abelian in R when Z(R) ∩ R^(1) ≠ 0", [&](Check& c) {
    std::size_t count = 0;
    for (const auto& name : {"sp:1", "sp:2", "sp:3", "clifford:3"}) {
      const auto& g = s.preset(name);
      const VNAlgebra even = closed(g.split().even, c.tol());
      for (std::uint64_t k = 0; k < 3; ++k) {
        for (const auto& e : minimal_projections(even, s.seed() + k)) {
          ++count;
          c.expect(is_abelian_projection(g.alg(), ProjectionHandle(g.alg(), e.matrix())),
                   std::string(name) + " projection abelian in R");
        }
      }
    }
    return std::to_string(count) + " projections";
  });

  s.run("B07-even-part-factor", "R central, not a factor, type I_n ⇒ R^(0) is a type I_n factor", [&](Check& c) {
    for (const auto& name : {"sp:1", "sp:2", "sp:3", "clifford:3"}) {
      const auto& g = s.preset(name);
      const auto whole = factor_decomposition(g.alg());
      const auto even = factor_decomposition(closed(g.split().even, c.tol()));
      c.expect(is_central(g) && !whole.is_factor, std::string(name) + " hypotheses");
      c.expect(even.is_factor, std::string(name) + " R^(0) factor");
      c.expect(even.summands.front().block_size == whole.summands.front().block_size, std::string(name) + " same n");
    }
    return "4 algebras";
  });

  s.run("B08-balanced-signature", "odd self-adjoint unitary exists iff each Ad_Γ-fixed summand has signature p = q",
        [&](Check& c) {
          for (const auto& name : kSingles) {
            const auto& g = s.preset(name);
            const auto result = find_odd_symmetry(g, s.seed());
            if (result.symmetry) {
              const CMatrix& w = *result.symmetry;
              c.residual(membership_residual(g.alg().space(), w), name + " in algebra");
              c.residual((g.gamma() * w * g.gamma() + w).norm(), name + " odd");
              c.expect(is_self_adjoint_unitary(w, c.tol().eq), name + " self-adjoint unitary");
              for (const auto& f : result.fixed) c.expect(f.plus == f.minus, name + " balanced signature");
            } else {
              const bool unequal = std::any_of(result.fixed.begin(), result.fixed.end(),
                                               [](const auto& f) { return f.plus != f.minus; });
              c.expect(unequal || g.split().odd.dim() == 0, name + " certificate for none");
            }
            bool expected = name.rfind("sp:", 0) == 0 || name == "mf:1,1" || name == "mf:2,2" || name == "clifford:3";
            c.expect(result.symmetry.has_value() == expected, name + " balanced flag");
          }
          return std::to_string(kSingles.size()) + " graded algebras";
        });

  s.run("B09-inner-grading", "on a type I factor, Ad_Γ is implemented by a self-adjoint unitary U ∈ R", [&](Check& c) {
    for (const auto& name : {"mf:1,1", "mf:2,1", "mf:2,2", "clifford:2"}) {
      const GradedAlgebra g = name == std::string("clifford:2") ? clifford_preset(2, c.tol()) : s.preset(name);
      const std::size_t d = g.hilbert_dim();
      const auto& basis = g.alg().space().basis();
      std::vector<CMatrix> images;
      for (const auto& b : basis) images.push_back(g.gamma() * b * g.gamma());
      const CMatrix u = implementing_symmetry(g.alg().space(), identity(d), basis, images, c.tol());
      c.expect(is_self_adjoint_unitary(u, c.tol().eq), std::string(name) + " symmetry");
      c.residual(membership_residual(g.alg().space(), u), std::string(name) + " in R");
      for (std::size_t i = 0; i < basis.size(); ++i) {
        c.residual((u * basis[i] * u - images[i]).norm(), std::string(name) + " implements Ad_Γ");
      }
    }
    return "4 factors";
  });

  s.run("B10-center-grading-split", "ΓQΓ = (I − P) − Q with P the Ad_Γ-fixed central part", [&](Check& c) {
    for (const auto& name : kSingles) {
      const auto& g = s.preset(name);
      const auto pq = center_grading_split(g);
      c.residual(pq.residual, name);
      c.expect(is_projection(pq.p, c.tol().eq) && is_projection(pq.q, c.tol().eq), name + " projections");
    }
    return std::to_string(kSingles.size()) + " graded algebras";
  });

  s.run("B11-minimal-even-projections", "B(H) has an orthogonal family of even minimal projections summing to I",
        [&](Check& c) {
          for (const auto& name : kSingles) {
            const auto& g = s.preset(name);
            const std::size_t d = g.hilbert_dim();
            const auto ps = minimal_even_projections(d, g.gamma());
            c.expect(ps.size() == d, name + " count");
            CMatrix sum = zeros(d);
            for (const auto& p : ps) {
              sum += p;
              c.residual((g.gamma() * p * g.gamma() - p).norm(), name + " even");
              c.expect(is_projection(p, c.tol().eq) && projection_rank(p) == 1, name + " rank one");
            }
            c.residual((sum - identity(d)).norm(), name + " sum");
          }
          return std::to_string(kSingles.size()) + " gradings";
        });
}

void tensor_cases(Suite& s) {
  s.run("C01-sign-rules", "π(t1)π(t2) = (−1)^{∂B1∂A2} π(A1A2 ⊗̂ B1B2), π(t)* = (−1)^{∂A∂B} π(A* ⊗̂ B*)",
        [&](Check& c) {
          for (const auto& a : kPairPresets) {
            for (const auto& b : kPairPresets) {
              const auto report = verify_sign_rules(s.preset(a), s.preset(b), 200, s.seed());
              c.residual(report.max_residual(), 1e-10, pair_name(a, b));
            }
          }
          return std::to_string(kPairPresets.size() * kPairPresets.size()) + " pairs x 200 samples";
        });

  s.run("C02-pi-degree", "Ad_{Γ1⊗Γ2} π(A ⊗̂ B) = (−1)^{∂A+∂B} π(A ⊗̂ B)", [&](Check& c) {
    Rng rng(s.seed());
    for (const auto& a : kPairPresets) {
      for (const auto& b : kPairPresets) {
        const auto& g1 = s.preset(a);
        const auto& g2 = s.preset(b);
        const CMatrix gamma = kron(g1.gamma(), g2.gamma());
        for (int k = 0; k < 20; ++k) {
          const int da = g1.split().odd.dim() > 0 ? k % 2 : 0;
          const int db = g2.split().odd.dim() > 0 ? (k / 2) % 2 : 0;
          const CMatrix x = random_element(da ? g1.split().odd : g1.split().even, rng);
          const CMatrix y = random_element(db ? g2.split().odd : g2.split().even, rng);
          const CMatrix p = pi_embed(g1, g2, {x, da, y, db});
          const double sign = (da + db) % 2 ? -1.0 : 1.0;
          c.residual((gamma * p * gamma - sign * p).norm() / std::max(1.0, p.norm()), pair_name(a, b));
        }
      }
    }
    return std::to_string(kPairPresets.size() * kPairPresets.size()) + " pairs x 20 samples";
  });

  s.run("C03-swap", "φ = Ad_U Ad_{Γ1⊗Γ2} Ad_V Ad_{V1⊗V2} maps R1 ⊗̂ R2 onto R2 ⊗̂ R1", [&](Check& c) {
    for (const auto& a : kPairPresets) {
      for (const auto& b : kPairPresets) {
        const auto report = swap_isomorphism(s.preset(a), s.preset(b), 50, s.seed());
        c.residual(report.residual, pair_name(a, b) + " image");
        c.residual(report.identity_residual, pair_name(a, b) + " four identities");
      }
    }
    return std::to_string(kPairPresets.size() * kPairPresets.size()) + " pairs";
  });

  s.run("C04-commutant-formula", "(R1 ⊗̂ R2)' is generated by (R1')^(0) ⊙ R2' and (R1')^(1) ⊙ R2'Γ2",
        [&](Check& c) {
          for (const auto& a : kPairPresets) {
            for (const auto& b : kPairPresets) {
              const auto& g1 = s.preset(a);
              const auto& g2 = s.preset(b);
              const VNAlgebra formula = commutant_formula(g1, g2);
              const VNAlgebra direct = commutant(graded_tensor(g1, g2).result.alg());
              c.residual(subspace_residual(formula.space(), direct.space()), pair_name(a, b));
            }
          }
          return std::to_string(kPairPresets.size() * kPairPresets.size()) + " pairs";
        });

  s.run("C05-center-formula", "Z(R1 ⊗̂ R2) = Z(R1)^(0) ⊗̄ Z(R2)^(0) when both graded centers are balanced",
        [&](Check& c) {
          std::size_t applicable = 0;
          for (const auto& a : kPairPresets) {
            for (const auto& b : kPairPresets) {
              const auto& g1 = s.preset(a);
              const auto& g2 = s.preset(b);
              const bool balanced = is_balanced(graded_center(g1)) && is_balanced(graded_center(g2));
              if (!balanced) {
                bool threw = false;
                try {
                  tensor_center_formula(g1, g2);
                } catch (const PreconditionError&) {
                  threw = true;
                }
                c.expect(threw, pair_name(a, b) + " precondition reported");
                continue;
              }
              ++applicable;
              const auto f = tensor_center_formula(g1, g2);
              c.residual(f.residual, pair_name(a, b));
              if (a.rfind("sp:", 0) == 0 && b.rfind("sp:", 0) == 0) {
                c.expect(factor_decomposition(graded_tensor(g1, g2).result.alg()).is_factor, pair_name(a, b) + " factor");
              }
            }
          }
          return std::to_string(applicable) + " applicable pairs";
        });

  s.run("C06-even-part", "(R1 ⊗̂ R2)^{<0>} = R1 ⊗̄ R2^(0); (R1 ⊗̂ R2)^(0) ≅ R1 ⊗̄ R2^(0) when Z(R2) is balanced",
        [&](Check& c) {
          std::size_t iso = 0;
          std::vector<std::pair<std::string, std::string>> pairs;
          for (const auto& a : kPairPresets) {
            for (const auto& b : kPairPresets) pairs.emplace_back(a, b);
          }
          pairs.emplace_back("sp:2", "sp:3");
          for (const auto& [a, b] : pairs) {
            const auto report = even_part_identity(s.preset(a), s.preset(b));
            c.residual(report.spatial_residual, pair_name(a, b) + " spatial");
            if (!report.iso_applicable) continue;
            ++iso;
            c.residual(report.iso_residual, pair_name(a, b) + " V-conjugate");
            c.expect(report.types_equal, pair_name(a, b) + " type reports");
          }
          return std::to_string(pairs.size()) + " pairs, " + std::to_string(iso) + " with balanced Z(R2)";
        });

  s.run("C07-type-2mn", "R1, R2 central non-factors of type I_m, I_n ⇒ R1 ⊗̂ R2 is a type I_{2mn} factor",
        [&](Check& c) {
          for (const auto& [m, n] : kSpPairs) {
            const auto r = factor_decomposition(graded_tensor(sp_preset(m, c.tol()), sp_preset(n, c.tol())).result.alg());
            const std::string where = "sp:" + std::to_string(m) + " ⊗̂ sp:" + std::to_string(n);
            c.expect(r.is_factor && r.summands.front().block_size == 2 * m * n && r.summands.front().multiplicity == 2,
                     where + " got " + format_summands(r));
          }
          return std::to_string(kSpPairs.size()) + " pairs";
        });

  s.run("C08-ordinary-baseline", "sp(m) ⊗̄ sp(n) has every summand of type I_mn", [&](Check& c) {
    for (const auto& [m, n] : kSpPairs) {
      const auto r = factor_decomposition(ordinary_tensor(sp_preset(m, c.tol()), sp_preset(n, c.tol())));
      const std::string where = "sp:" + std::to_string(m) + " ⊗̄ sp:" + std::to_string(n);
      c.expect(!r.is_factor && r.summands.size() == 4, where + " summand count " + format_summands(r));
      for (const auto& summand : r.summands) {
        c.expect(summand.block_size == m * n && summand.multiplicity == 1, where + " got " + format_summands(r));
      }
    }
    return std::to_string(kSpPairs.size()) + " pairs";
  });

  s.run("C09-abelian-grid", "G_{a,b} = (1±U1)/2 E_a ⊗ F_b are 2mn equivalent abelian projections with support I",
        [&](Check& c) {
          for (const auto& [m, n] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 1}, {2, 3}}) {
            const auto grid = abelian_grid(sp_preset(m, c.tol()), sp_preset(n, c.tol()), s.seed());
            const std::string where = "sp:" + std::to_string(m) + " ⊗̂ sp:" + std::to_string(n);
            c.expect(grid.projections.size() == 2 * m * n, where + " count");
            c.expect(grid.in_algebra, where + " in algebra");
            c.expect(grid.abelian, where + " abelian");
            c.expect(grid.equivalent, where + " equivalent");
            c.expect(grid.sums_to_identity, where + " sum I");
            c.expect(grid.full_support, where + " central support I");
          }
          return "3 pairs";
        });

  s.run("C10-factor-case", "R1 type I factor, R2 balanced ⇒ R1 ⊗̂ R2 ≅ R1 ⊗̄ R2", [&](Check& c) {
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"mf:1,1", "sp:1"}, {"mf:1,1", "sp:2"}, {"mf:2,2", "sp:1"}, {"mf:2,2", "sp:2"}, {"mf:1,1", "mf:1,1"}};
    for (const auto& [a, b] : pairs) {
      const auto report = factor_case_identity(s.preset(a), s.preset(b));
      c.residual(report.residual, pair_name(a, b));
      c.expect(same_type(report.graded, report.ordinary), pair_name(a, b) + " type reports");
    }
    return std::to_string(pairs.size()) + " pairs";
  });

  s.run("C11-central-supports", "central supports of A ⊗ B in R1 ⊗̂ R2 and R1 ⊗̄ R2 agree for even A, B",
        [&](Check& c) {
          const std::vector<std::pair<std::string, std::string>> pairs = {
              {"sp:1", "sp:1"}, {"sp:2", "sp:2"}, {"mf:1,1", "sp:1"}, {"sp:1", "mf:2,1"}, {"diag:4:2,1,3,4", "sp:1"}};
          std::size_t count = 0;
          for (const auto& [a, b] : pairs) {
            const auto& g1 = s.preset(a);
            const auto& g2 = s.preset(b);
            const auto es = minimal_projections(closed(g1.split().even, c.tol()), s.seed());
            const auto fs = minimal_projections(closed(g2.split().even, c.tol()), s.seed());
            std::vector<CMatrix> lefts{identity(g1.hilbert_dim())};
            std::vector<CMatrix> rights{identity(g2.hilbert_dim())};
            for (const auto& e : es) lefts.push_back(e.matrix());
            for (const auto& f : fs) rights.push_back(f.matrix());
            for (const auto& x : lefts) {
              for (const auto& y : rights) {
                const auto cmp = central_support_compare(g1, g2, x, y);
                c.residual((cmp.c - cmp.d).norm(), pair_name(a, b));
                ++count;
              }
            }
          }
          return std::to_string(count) + " comparisons";
        });

  s.run("C12-conditional-expectation", "Φ_z = I ⊗ Ψ_z is a faithful-in-z conditional expectation onto S",
        [&](Check& c) {
          const std::vector<std::pair<std::string, std::string>> pairs = {
              {"sp:1", "sp:1"}, {"mf:1,1", "sp:2"}, {"sp:2", "mf:2,1"}, {"diag:4:2,1,3,4", "sp:1"}};
          Rng rng(s.seed());
          for (const auto& [a, b] : pairs) {
            const auto& g1 = s.preset(a);
            const auto& g2 = s.preset(b);
            const ConditionalExpectation ce(g1, g2);
            const std::size_t d1 = g1.hilbert_dim();
            const std::size_t d = ce.domain().hilbert_dim();
            const auto& m = ce.target().alg().space();
            const std::string where = pair_name(a, b);
            for (int k = 0; k < 10; ++k) {
              const CVector z = random_unit_vector(d1, rng);
              c.residual((ce.phi(z, identity(d)) - identity(d)).norm(), where + " unital");
              const CMatrix a0 = random_element(g1.split().even, rng);
              const CMatrix b0 = random_element(g2.split().even, rng);
              const CMatrix b1 = g2.split().odd.dim() ? random_element(g2.split().odd, rng) : zeros(g2.hilbert_dim());
              const CMatrix s2 = b0 + b1 * g2.gamma();
              const Complex weight = z.dot(a0 * z);
              const CMatrix want = weight * s2;
              c.residual((ce.psi(z, kron(a0, s2)) - want).norm() / std::max(1.0, want.norm()), where + " formula");
              const CMatrix t = random_element(ce.domain().alg().space(), rng);
              const CMatrix x = kron(identity(d1), random_element(m, rng));
              const CMatrix y = kron(identity(d1), random_element(m, rng));
              const CMatrix lhs = ce.phi(z, x * t * y);
              c.residual((lhs - x * ce.phi(z, t) * y).norm() / std::max(1.0, lhs.norm()), where + " module");
              c.residual(membership_residual(m, ce.psi(z, t)), where + " range in S");
              const CMatrix pos = t.adjoint() * t;
              const auto eig = hermitian_eigen(ce.psi(z, pos));
              c.expect(eig.values.front() >= -c.tol().eq * std::max(1.0, pos.norm()), where + " positive");
            }
            std::vector<CVector> sweep;
            for (std::size_t i = 0; i < d1; ++i) sweep.push_back(CVector::Unit(static_cast<Eigen::Index>(d1), i));
            for (int k = 0; k < 32; ++k) sweep.push_back(random_unit_vector(d1, rng));
            for (int k = 0; k < 5; ++k) {
              const CMatrix t = random_element(ce.domain().alg().space(), rng);
              const CMatrix pos = t.adjoint() * t;
              double largest = 0.0;
              for (const auto& z : sweep) largest = std::max(largest, ce.psi(z, pos).norm());
              c.expect(largest > c.tol().eq * pos.norm(), where + " faithful over z");
            }
          }
          return std::to_string(pairs.size()) + " pairs";
        });
}

void oracle_cases(Suite& s) {
  s.run("D01-type-table", "type I rows: I_m ⊗̂ I_n is I_mn for a factor, I_2mn for central non-factors",
        [&](Check& c) {
          std::size_t computed = 0;
          for (const auto& cell : type_table(2, c.tol())) {
            if (!cell.computed) continue;
            ++computed;
            c.expect(cell.result == cell.expected, cell.regime + " " + cell.inputs + " got " + cell.result);
          }
          return std::to_string(computed) + " computed cells";
        });

  s.run("D02-clifford-periodicity", "Cl_k is I_{2^{k/2}} for even k, I_{2^{(k-1)/2}} ⊕ I_{2^{(k-1)/2}} for odd k",
        [&](Check& c) {
          const char* expected[] = {"I_1 ⊕ I_1", "I_2", "I_2 ⊕ I_2", "I_4", "I_4 ⊕ I_4"};
          for (std::size_t k = 1; k <= 5; ++k) {
            const auto r = factor_decomposition(clifford_preset(k, c.tol()).alg());
            c.expect(r.type_label == expected[k - 1], "clifford:" + std::to_string(k) + " got " + r.type_label);
            c.expect(r.is_factor == (k % 2 == 0), "clifford:" + std::to_string(k) + " factor flag");
          }
          return "k = 1..5";
        });
}

}  // namespace

std::vector<CaseResult> run_verify_suite(const VerifyOptions& options) {
  Suite suite(options);
  algebra_cases(suite);
  grading_cases(suite);
  tensor_cases(suite);
  oracle_cases(suite);
  return suite.take();
}

}  // namespace gvna
