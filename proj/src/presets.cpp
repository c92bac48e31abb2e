#include "gvna/presets.hpp"

#include <charconv>

#include <Eigen/QR>

#include "gvna/errors.hpp"
#include "gvna/graded_tensor.hpp"

namespace gvna {

namespace {

CMatrix unit_matrix(std::size_t d, std::size_t i, std::size_t j) {
  CMatrix e = zeros(d);
  e(i, j) = 1.0;
  return e;
}

CMatrix block_diag(const CMatrix& a, const CMatrix& b) {
  CMatrix out = CMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw InputError("preset: " + std::string(what) + " must be a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split_on(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

void require_positive(std::size_t value, const char* what) {
  if (value < 1) throw InputError(std::string("preset: ") + what + " must be at least 1");
}

void validate_involution(std::size_t d, const std::vector<std::size_t>& s) {
  if (s.size() != d) {
    throw InputError("preset: diag involution has " + std::to_string(s.size()) + " entries, expected " +
                     std::to_string(d));
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (s[i] >= d || s[s[i]] != i) throw InputError("preset: diag permutation is not an involution of {1.." +
                                                    std::to_string(d) + "}");
  }
}

}  // namespace

std::string PresetSpec::to_string() const {
  switch (kind) {
    case Kind::mf:
      return "mf:" + std::to_string(p) + "," + std::to_string(q);
    case Kind::sp:
      return "sp:" + std::to_string(n);
    case Kind::clifford:
      return "clifford:" + std::to_string(n);
    case Kind::diag: {
      std::string out = "diag:" + std::to_string(n) + ":";
      for (std::size_t i = 0; i < involution.size(); ++i) out += (i ? "," : "") + std::to_string(involution[i] + 1);
      return out;
    }
    case Kind::trivial:
      return "trivial:" + base->to_string();
  }
  return {};
}

PresetSpec parse_preset(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InputError("preset: expected kind:params, got '" + std::string(text) + "'");
  const auto kind = text.substr(0, colon);
  const auto params = text.substr(colon + 1);
  PresetSpec spec;
  if (kind == "mf") {
    const auto parts = split_on(params, ',');
    if (parts.size() != 2) throw InputError("preset: mf expects mf:p,q");
    spec.kind = PresetSpec::Kind::mf;
    spec.p = parse_count(parts[0], "p");
    spec.q = parse_count(parts[1], "q");
    require_positive(spec.p, "p");
    require_positive(spec.q, "q");
  } else if (kind == "sp" || kind == "clifford") {
    spec.kind = kind == "sp" ? PresetSpec::Kind::sp : PresetSpec::Kind::clifford;
    spec.n = parse_count(params, kind == "sp" ? "n" : "k");
    require_positive(spec.n, kind == "sp" ? "n" : "k");
  } else if (kind == "diag") {
    const auto parts = split_on(params, ':');
    if (parts.size() != 2) throw InputError("preset: diag expects diag:d:s1,...,sd");
    spec.kind = PresetSpec::Kind::diag;
    spec.n = parse_count(parts[0], "d");
    require_positive(spec.n, "d");
    for (const auto item : split_on(parts[1], ',')) {
      const std::size_t image = parse_count(item, "permutation entry");
      if (image < 1) throw InputError("preset: diag permutation entries are 1-based");
      spec.involution.push_back(image - 1);
    }
    validate_involution(spec.n, spec.involution);
  } else if (kind == "trivial") {
    spec.kind = PresetSpec::Kind::trivial;
    spec.base = std::make_shared<const PresetSpec>(parse_preset(params));
  } else {
    throw InputError("preset: unknown kind '" + std::string(kind) + "'");
  }
  return spec;
}

GradedAlgebra mf_preset(std::size_t p, std::size_t q, const Tolerances& tol) {
  require_positive(p, "p");
  require_positive(q, "q");
  const std::size_t d = p + q;
  std::vector<CMatrix> gens;
  for (std::size_t i = 0; i + 1 < d; ++i) gens.push_back(unit_matrix(d, i, i + 1));
  CMatrix gamma = identity(d);
  for (std::size_t i = p; i < d; ++i) gamma(i, i) = -1.0;
  return make_graded(gens, gamma, "mf:" + std::to_string(p) + "," + std::to_string(q), tol);
}

GradedAlgebra sp_preset(std::size_t n, const Tolerances& tol) {
  require_positive(n, "n");
  std::vector<CMatrix> gens;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const CMatrix e = unit_matrix(n, i, i + 1);
    gens.push_back(block_diag(e, e));
    gens.push_back(block_diag(e, -e));
  }
  gens.push_back(block_diag(identity(n), -identity(n)));
  CMatrix gamma = zeros(2 * n);
  gamma.topRightCorner(n, n) = identity(n);
  gamma.bottomLeftCorner(n, n) = identity(n);
  return make_graded(gens, gamma, "sp:" + std::to_string(n), tol);
}

GradedAlgebra clifford_preset(std::size_t k, const Tolerances& tol) {
  require_positive(k, "k");
  const GradedAlgebra sp1 = sp_preset(1, tol);
  GradedAlgebra acc = sp1;
  for (std::size_t i = 1; i < k; ++i) acc = graded_tensor(acc, sp1).result;
  return GradedAlgebra(acc.alg(), acc.gamma(), "clifford:" + std::to_string(k));
}

GradedAlgebra diag_preset(std::size_t d, const std::vector<std::size_t>& involution, const Tolerances& tol) {
  require_positive(d, "d");
  validate_involution(d, involution);
  std::vector<CMatrix> gens;
  CMatrix gamma = zeros(d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t j = involution[i];
    gamma(j, i) = 1.0;
    if (j == i) {
      gens.push_back(unit_matrix(d, i, i));
    } else if (i < j) {
      gens.push_back(unit_matrix(d, i, i) + unit_matrix(d, j, j));
      gens.push_back(unit_matrix(d, i, i) - unit_matrix(d, j, j));
    }
  }
  PresetSpec spec;
  spec.kind = PresetSpec::Kind::diag;
  spec.n = d;
  spec.involution = involution;
  return make_graded(gens, gamma, spec.to_string(), tol);
}

GradedAlgebra trivially_graded(const VNAlgebra& a, std::string name) {
  return GradedAlgebra(a, identity(a.hilbert_dim()), std::move(name));
}

CMatrix random_unitary(std::size_t d, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd z(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex r = qr.matrixQR()(j, j);
    if (std::abs(r) > 0) q.col(j) *= r / std::abs(r);
  }
  return q;
}

GradedAlgebra conjugated(const GradedAlgebra& g, const CMatrix& u) {
  std::vector<CMatrix> gens;
  for (const auto& x : g.alg().generators()) gens.push_back(u * x * u.adjoint());
  const CMatrix gamma = u * g.gamma() * u.adjoint();
  return make_graded(gens, (gamma + gamma.adjoint()) / 2.0, g.name(), g.tolerances());
}

GradedAlgebra build_preset(const PresetSpec& spec, const Tolerances& tol) {
  switch (spec.kind) {
    case PresetSpec::Kind::mf:
      return mf_preset(spec.p, spec.q, tol);
    case PresetSpec::Kind::sp:
      return sp_preset(spec.n, tol);
    case PresetSpec::Kind::clifford:
      return clifford_preset(spec.n, tol);
    case PresetSpec::Kind::diag:
      return diag_preset(spec.n, spec.involution, tol);
    case PresetSpec::Kind::trivial:
      return trivially_graded(build_preset(*spec.base, tol).alg(), spec.to_string());
  }
  throw InputError("preset: unknown kind");
}

GradedAlgebra build_preset(std::string_view text, const Tolerances& tol) { return build_preset(parse_preset(text), tol); }

std::vector<PresetInfo> preset_catalog() {
  return {
      {"mf:p,q", "full matrix algebra B(C^{p+q}) graded by diag(I_p, -I_q); type I_{p+q} factor, balanced iff p = q"},
      {"sp:n", "M_n ⊕ M_n on C^{2n} graded by the block swap; central, not a factor, balanced"},
      {"clifford:k", "k-fold graded tensor power of sp:1"},
      {"diag:d:s1,...,sd", "diagonal algebra on C^d graded by the involution i -> s_i"},
      {"trivial:SPEC", "the algebra of SPEC with trivial grading"},
  };
}

}  // namespace gvna
