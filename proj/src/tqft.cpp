#include "grasstqft/tqft.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "grasstqft/detail/parallel.hpp"
#include "grasstqft/errors.hpp"

namespace grasstqft {

namespace {

struct Plan {
  std::optional<std::int64_t> d;
  std::int64_t t = 0;
  Multipartition parts;
  std::string reason;
};

Plan plan(const MatrixElementQuery& q) {
  const int r = q.theory.r, k = q.theory.k, n = q.theory.n();
  if (q.g < 0) throw DomainError("genus must be nonnegative");
  require_in_box(q.inputs, r, k);
  require_in_box(q.outputs, r, k);
  const auto u = static_cast<std::int64_t>(q.outputs.size());
  Plan p;
  p.t = r * (q.g + u) + k;
  const std::int64_t diff = weight(q.inputs) - weight(q.outputs);
  if (((diff % n) + n) % n != 0) {
    p.reason = "non-integral degree";
    return p;
  }
  p.d = diff / n + r * (q.g + u);
  if (*p.d < 0) {
    p.reason = "negative degree";
    return p;
  }
  p.reason = "integral";
  p.parts = q.inputs;
  for (const auto& mu : q.outputs) p.parts.push_back(star(mu, r, k));
  const std::int64_t degree = weight(p.parts) + r * p.t;
  if (degree != expected_dimension(q.g, r, n, *p.d)) {
    throw InternalError("matrix element integrand has degree " + std::to_string(degree) + ", expected " +
                        std::to_string(expected_dimension(q.g, r, n, *p.d)));
  }
  return p;
}

std::string describe(const Multipartition& m) { return to_json(m).dump(); }

std::string describe(const MatrixElementQuery& q) {
  std::ostringstream os;
  os << "r=" << q.theory.r << " k=" << q.theory.k << " g=" << q.g << " in=" << describe(q.inputs)
     << " out=" << describe(q.outputs);
  return os.str();
}

ReportEntry compare(std::string check, std::string instance, const Integer& lhs, const Integer& rhs) {
  return {std::move(check), std::move(instance), lhs == rhs, to_string(lhs), to_string(rhs)};
}

Multipartition concat(Multipartition a, const Multipartition& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw InternalError("SHA-256 computation failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

// Determinant over Q by fraction-exact Gaussian elimination.
Rational rational_determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col] == 0) continue;
      const Rational f = m[row][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  return det;
}

}  // namespace

MatrixElementTrace matrix_element_explain(const MatrixElementQuery& q, const ExecOptions& opts) {
  const Plan p = plan(q);
  MatrixElementTrace out;
  out.d = p.d;
  out.t = p.t;
  out.reason = p.reason;
  if (p.reason != "integral") {
    out.value = 0;
    return out;
  }
  const Rational v = schur_product_integral(q.g, q.theory.r, q.theory.n(), *p.d, p.parts, p.t, opts);
  out.value = require_integer(v, "matrix_element");
  return out;
}

Integer matrix_element(const MatrixElementQuery& q, const ExecOptions& opts) {
  return matrix_element_explain(q, opts).value;
}

FloatApprox matrix_element_float(const MatrixElementQuery& q, unsigned precision, const ExecOptions& opts) {
  const Plan p = plan(q);
  if (p.reason != "integral") {
    if (precision < 64) throw DomainError("floating precision must be at least 64 bits");
    const auto prec = static_cast<mpfr_prec_t>(precision);
    return {BigFloat(prec), BigFloat(prec), precision};
  }
  return schur_product_integral_float(q.g, q.theory.r, q.theory.n(), *p.d, p.parts, p.t, precision, opts);
}

json to_json(const ReportEntry& e) {
  return {{"check", e.check}, {"instance", e.instance}, {"status", e.pass ? "pass" : "fail"}, {"lhs", e.lhs},
          {"rhs", e.rhs}};
}

json to_json(const Report& report) {
  json out = json::array();
  for (const auto& e : report) out.push_back(to_json(e));
  return out;
}

bool all_pass(const Report& report) {
  for (const auto& e : report) {
    if (!e.pass) return false;
  }
  return true;
}

FusionTable FusionTable::build(const TheoryParams& theory, const ExecOptions& opts) {
  FusionTable t;
  t.theory_ = theory;
  t.basis_ = enumerate_basis(theory.r, theory.k);
  const std::size_t n = t.basis_.size();
  t.metric_ = detail::parallel_map<Integer>(
      n * n,
      [&](std::uint64_t i) {
        return matrix_element({0, {t.basis_[i / n], t.basis_[i % n]}, {}, theory});
      },
      opts.workers);
  t.constants_ = detail::parallel_map<Integer>(
      n * n * n,
      [&](std::uint64_t i) {
        const std::size_t a = i / (n * n), b = (i / n) % n, c = i % n;
        return matrix_element({0, {t.basis_[a], t.basis_[b]}, {t.basis_[c]}, theory});
      },
      opts.workers);
  return t;
}

std::size_t FusionTable::index_of(const Partition& p) const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i] == p) return i;
  }
  throw DomainError("partition " + p.to_string() + " is not in the basis");
}

FusionTable FusionTable::with_constant(std::size_t a, std::size_t b, std::size_t c, const Integer& value) const {
  FusionTable t = *this;
  t.constants_.at((a * size() + b) * size() + c) = value;
  return t;
}

json FusionTable::content_json() const {
  const std::size_t n = size();
  json basis = json::array();
  for (const auto& p : basis_) basis.push_back(grasstqft::to_json(p));
  json metric = json::array();
  for (std::size_t a = 0; a < n; ++a) {
    json row = json::array();
    for (std::size_t b = 0; b < n; ++b) row.push_back(to_string(this->metric(a, b)));
    metric.push_back(row);
  }
  json constants = json::object();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      json entry = json::object();
      for (std::size_t c = 0; c < n; ++c) {
        const Integer& v = constant(a, b, c);
        if (v != 0) entry[std::to_string(c)] = to_string(v);
      }
      if (!entry.empty()) constants[std::to_string(a) + "," + std::to_string(b)] = entry;
    }
  }
  return {{"r", theory_.r}, {"k", theory_.k}, {"basis", basis}, {"metric", metric}, {"constants", constants}};
}

std::string FusionTable::content_hash() const { return sha256_hex(content_json().dump()); }

json FusionTable::to_json() const {
  json j = content_json();
  j["hash"] = content_hash();
  return j;
}

FusionTable FusionTable::from_json(const json& j, bool trusted) {
  FusionTable t;
  try {
    t.theory_ = TheoryParams(j.at("r").get<int>(), j.at("k").get<int>());
    for (const auto& p : j.at("basis")) t.basis_.push_back(partition_from_json(p));
    if (t.basis_ != enumerate_basis(t.theory_.r, t.theory_.k)) {
      throw DomainError("stored basis differs from the graded-lex basis of P_{r,k}");
    }
    const std::size_t n = t.basis_.size();
    const auto& metric = j.at("metric");
    if (metric.size() != n) throw DomainError("metric has the wrong number of rows");
    for (const auto& row : metric) {
      if (row.size() != n) throw DomainError("metric row has the wrong length");
      for (const auto& v : row) t.metric_.push_back(integer_from_json(v));
    }
    t.constants_.assign(n * n * n, Integer(0));
    for (const auto& [key, entry] : j.at("constants").items()) {
      const auto comma = key.find(',');
      if (comma == std::string::npos) throw DomainError("bad constants key '" + key + "'");
      const std::size_t a = std::stoul(key.substr(0, comma)), b = std::stoul(key.substr(comma + 1));
      for (const auto& [ckey, v] : entry.items()) {
        const std::size_t c = std::stoul(ckey);
        if (a >= n || b >= n || c >= n) throw DomainError("constants index out of range");
        t.constants_[(a * n + b) * n + c] = integer_from_json(v);
      }
    }
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed fusion table: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed fusion table index");
  }
  const std::string stored = j.value("hash", std::string());
  if (stored != t.content_hash()) throw DomainError("fusion table hash mismatch (stale or edited file)");
  if (!trusted) {
    const Report report = verify_frobenius(t);
    for (const auto& e : report) {
      if (!e.pass) throw DomainError("loaded fusion table fails " + e.check + " at " + e.instance);
    }
  }
  return t;
}

void FusionTable::save(const std::filesystem::path& file) const {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write " + tmp);
    out << to_json().dump(1) << '\n';
  }
  std::filesystem::rename(tmp, file);
}

FusionTable FusionTable::load(const std::filesystem::path& file, bool trusted) {
  std::ifstream in(file);
  if (!in) throw Error("cannot read " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("malformed fusion table " + file.string() + ": " + e.what());
  }
  return from_json(j, trusted);
}

std::filesystem::path fusion_cache_path(const std::filesystem::path& dir, const TheoryParams& theory) {
  return dir / ("fusion-r" + std::to_string(theory.r) + "-k" + std::to_string(theory.k) + ".json");
}

FusionTable cached_fusion_table(const std::filesystem::path& dir, const TheoryParams& theory, const ExecOptions& opts,
                                bool* rebuilt) {
  const auto file = fusion_cache_path(dir, theory);
  if (std::filesystem::exists(file)) {
    try {
      FusionTable t = FusionTable::load(file);
      if (t.theory() == theory) {
        if (rebuilt) *rebuilt = false;
        return t;
      }
    } catch (const Error&) {
      // stale or corrupt: fall through and rebuild
    }
  }
  FusionTable t = FusionTable::build(theory, opts);
  t.save(file);
  if (rebuilt) *rebuilt = true;
  return t;
}

Report verify_frobenius(const FusionTable& t) {
  const std::size_t n = t.size();
  const auto& B = t.basis();
  auto name = [&](std::size_t i) { return B[i].to_string(); };
  Report report;

  ReportEntry comm{"commutativity", "all", true, "", ""};
  for (std::size_t a = 0; a < n && comm.pass; ++a)
    for (std::size_t b = 0; b < n && comm.pass; ++b)
      for (std::size_t c = 0; c < n && comm.pass; ++c)
        if (t.constant(a, b, c) != t.constant(b, a, c))
          comm = compare("commutativity", "N_{" + name(a) + "," + name(b) + "}^" + name(c), t.constant(a, b, c),
                         t.constant(b, a, c));
  report.push_back(comm);

  ReportEntry assoc{"associativity", "all", true, "", ""};
  for (std::size_t a = 0; a < n && assoc.pass; ++a)
    for (std::size_t b = 0; b < n && assoc.pass; ++b)
      for (std::size_t c = 0; c < n && assoc.pass; ++c)
        for (std::size_t d = 0; d < n && assoc.pass; ++d) {
          Integer lhs = 0, rhs = 0;
          for (std::size_t p = 0; p < n; ++p) {
            lhs += t.constant(a, b, p) * t.constant(p, c, d);
            rhs += t.constant(b, c, p) * t.constant(a, p, d);
          }
          if (lhs != rhs)
            assoc = compare("associativity", "(" + name(a) + "," + name(b) + "," + name(c) + "," + name(d) + ")", lhs,
                            rhs);
        }
  report.push_back(assoc);

  ReportEntry unit{"unit", "all", true, "", ""};
  const std::size_t e = t.index_of(Partition());
  for (std::size_t b = 0; b < n && unit.pass; ++b)
    for (std::size_t c = 0; c < n && unit.pass; ++c)
      if (t.constant(e, b, c) != (b == c ? 1 : 0))
        unit = compare("unit", "N_{[]," + name(b) + "}^" + name(c), t.constant(e, b, c), Integer(b == c ? 1 : 0));
  report.push_back(unit);

  ReportEntry frob{"frobenius", "all", true, "", ""};
  for (std::size_t a = 0; a < n && frob.pass; ++a)
    for (std::size_t b = 0; b < n && frob.pass; ++b)
      for (std::size_t c = 0; c < n && frob.pass; ++c) {
        Integer lhs = 0, rhs = 0;
        for (std::size_t p = 0; p < n; ++p) {
          lhs += t.constant(a, b, p) * t.metric(p, c);
          rhs += t.constant(b, c, p) * t.metric(a, p);
        }
        if (lhs != rhs) frob = compare("frobenius", "(" + name(a) + "," + name(b) + "," + name(c) + ")", lhs, rhs);
      }
  report.push_back(frob);

  ReportEntry sym{"metric-symmetry", "all", true, "", ""};
  for (std::size_t a = 0; a < n && sym.pass; ++a)
    for (std::size_t b = 0; b < n && sym.pass; ++b)
      if (t.metric(a, b) != t.metric(b, a))
        sym = compare("metric-symmetry", "(" + name(a) + "," + name(b) + ")", t.metric(a, b), t.metric(b, a));
  report.push_back(sym);

  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) g[a][b] = t.metric(a, b);
  const Rational det = rational_determinant(std::move(g));
  report.push_back({"nondegeneracy", "det G", det != 0, to_string(det), "nonzero"});

  ReportEntry pos{"positivity", "all", true, "", ""};
  for (std::size_t a = 0; a < n && pos.pass; ++a)
    for (std::size_t b = 0; b < n && pos.pass; ++b)
      for (std::size_t c = 0; c < n && pos.pass; ++c)
        if (t.constant(a, b, c) < 0)
          pos = {"positivity", "N_{" + name(a) + "," + name(b) + "}^" + name(c), false, to_string(t.constant(a, b, c)),
                 ">= 0"};
  report.push_back(pos);
  return report;
}

ReportEntry verify_gluing(int g1, int g2, const Multipartition& in, const Multipartition& out, int t,
                          const TheoryParams& theory, const ExecOptions& opts) {
  if (t < 1) throw DomainError("gluing needs at least one circle");
  if (t > 3) throw OutOfRegime("gluing along more than 3 circles is outside the supported envelope");
  const auto basis = enumerate_basis(theory.r, theory.k);
  Integer lhs = 0;
  for (const auto& mu : cartesian_power(basis, t)) {
    const Integer left = matrix_element({g1, in, mu, theory}, opts);
    if (left == 0) continue;
    lhs += left * matrix_element({g2, mu, out, theory}, opts);
  }
  const Integer rhs = matrix_element({g1 + g2 + t - 1, in, out, theory}, opts);
  std::ostringstream os;
  os << "r=" << theory.r << " k=" << theory.k << " g1=" << g1 << " g2=" << g2 << " t=" << t << " in=" << describe(in)
     << " out=" << describe(out);
  return compare("gluing", os.str(), lhs, rhs);
}

ReportEntry verify_handle(int g, const Multipartition& in, const Multipartition& out, const TheoryParams& theory,
                          const ExecOptions& opts) {
  if (g < 1) throw DomainError("handle removal needs g >= 1");
  Integer rhs = 0;
  for (const auto& rho : enumerate_basis(theory.r, theory.k)) {
    rhs += matrix_element({g - 1, concat(in, {rho}), concat(out, {rho}), theory}, opts);
  }
  const Integer lhs = matrix_element({g, in, out, theory}, opts);
  return compare("handle", describe(MatrixElementQuery{g, in, out, theory}), lhs, rhs);
}

ReportEntry verify_degeneration_split(int g1, int g2, const Multipartition& in1, const Multipartition& in2,
                                      const Multipartition& out1, const Multipartition& out2,
                                      const TheoryParams& theory, const ExecOptions& opts) {
  Integer rhs = 0;
  for (const auto& rho : enumerate_basis(theory.r, theory.k)) {
    const Integer left = matrix_element({g1, concat(in1, {rho}), out1, theory}, opts);
    if (left == 0) continue;
    rhs += left * matrix_element({g2, in2, concat(out2, {rho}), theory}, opts);
  }
  const Integer lhs = matrix_element({g1 + g2, concat(in1, in2), concat(out1, out2), theory}, opts);
  std::ostringstream os;
  os << "r=" << theory.r << " k=" << theory.k << " g1=" << g1 << " g2=" << g2 << " in=" << describe(in1) << "+"
     << describe(in2) << " out=" << describe(out1) << "+" << describe(out2);
  return compare("degeneration", os.str(), lhs, rhs);
}

ReportEntry level_rank_check(const MatrixElementQuery& q, const ExecOptions& opts) {
  if (q.theory.k < 1) throw DomainError("level-rank duality needs k >= 1");
  const Integer lhs = matrix_element(q, opts);
  const Integer rhs = matrix_element({q.g, transpose(q.inputs), transpose(q.outputs), q.theory.dual()}, opts);
  return compare("level-rank", describe(q), lhs, rhs);
}

Report verify_structure_constant_forms(const TheoryParams& theory, const ExecOptions& opts) {
  const auto basis = enumerate_basis(theory.r, theory.k);
  const int r = theory.r, k = theory.k, n = theory.n();
  Report report;
  for (const auto& a : basis) {
    for (const auto& b : basis) {
      for (const auto& c : basis) {
        const auto trace = matrix_element_explain({0, {a, b}, {c}, theory}, opts);
        Integer bare = 0;
        if (trace.d && *trace.d - r >= 0) {
          bare = require_integer(schur_product_integral(0, r, n, *trace.d - r, {a, b, star(c, r, k)}, 0, opts),
                                 "structure constant");
        }
        report.push_back(compare("structure-constant-forms",
                                 "r=" + std::to_string(r) + " k=" + std::to_string(k) + " N_{" + a.to_string() + "," +
                                     b.to_string() + "}^" + c.to_string(),
                                 trace.value, bare));
      }
    }
  }
  return report;
}

}  // namespace grasstqft
