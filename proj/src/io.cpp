#include "soccover/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace soccover {

namespace {

constexpr const char* kMatrixFormat = "soccover-matrix";
constexpr const char* kCertFormat = "soccover-cert";
constexpr const char* kLiftFormat = "soccover-lift";
constexpr const char* kSupportFormat = "soccover-support";
constexpr int kFormatVersion = 1;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument("document: " + msg);
}

Json curve_to_json(const GeneratorCurve& curve) {
  Json j;
  if (const auto* m = std::get_if<MomentCurve>(&curve)) {
    j["kind"] = "moment";
    j["indices"] = m->indices;
  } else {
    const auto& t = std::get<TrigCurve>(curve);
    j["kind"] = "trig";
    j["thetas"] = t.thetas;
  }
  return j;
}

GeneratorCurve curve_from_json(const Json& j) {
  require(j.contains("kind"), "curve without kind");
  const std::string kind = j.at("kind");
  if (kind == "moment") {
    MomentCurve c;
    c.indices = j.at("indices").get<std::vector<long long>>();
    return c;
  }
  if (kind == "trig") {
    TrigCurve c;
    c.thetas = j.at("thetas").get<std::vector<double>>();
    return c;
  }
  throw std::invalid_argument("document: unknown curve kind " + kind);
}

Json rows_to_json(int n) {
  Json rows = Json::array();
  for (int r = 0; r < pair_count(n); ++r) {
    const auto [i, j] = pair_at(n, r);
    rows.push_back(Json::array({i + 1, j + 1}));
  }
  return rows;
}

Json cone_point_to_json(const ConePoint<Rat>& p) {
  return Json::array({rat_to_string(p.x1), rat_to_string(p.x2), rat_to_string(p.t)});
}

ConePoint<Rat> cone_point_from_json(const Json& j) {
  require(j.is_array() && j.size() == 3, "cone point needs 3 coordinates");
  return ConePoint<Rat>{rat_from_string(j[0].get<std::string>()),
                        rat_from_string(j[1].get<std::string>()),
                        rat_from_string(j[2].get<std::string>())};
}

Json cells_to_json(const SupportPattern& p) {
  Json cells = Json::array();
  for (const Cell& c : p.cells()) {
    const auto [i, j] = pair_at(p.n(), c.row);
    cells.push_back(Json::array({i + 1, j + 1, c.col + 1}));
  }
  return cells;
}

std::vector<Cell> cells_from_json(int n, const Json& j) {
  std::vector<Cell> out;
  for (const Json& cj : j) {
    require(cj.is_array() && cj.size() == 3, "cell needs [i, j, col]");
    const int i = cj[0].get<int>() - 1;
    const int jj = cj[1].get<int>() - 1;
    const int col = cj[2].get<int>() - 1;
    require(i >= 0 && i < jj && jj < n && col >= 0 && col < n, "cell label out of range");
    out.push_back(Cell{pair_index(n, i, jj), col});
  }
  return out;
}

}  // namespace

int MatrixDocument::n() const {
  return exact() ? std::get<LabeledMatrix<Rat>>(matrix).n
                 : std::get<LabeledMatrix<double>>(matrix).n;
}

Json matrix_to_json(const MatrixDocument& doc) {
  Json j;
  j["format"] = kMatrixFormat;
  j["version"] = kFormatVersion;
  j["regime"] = doc.exact() ? "exact" : "floating";
  j["n"] = doc.n();
  j["curve"] = curve_to_json(doc.curve);
  j["rows"] = rows_to_json(doc.n());
  Json cols = Json::array();
  for (int c = 0; c < doc.n(); ++c) cols.push_back(c + 1);
  j["cols"] = cols;
  Json entries = Json::array();
  if (doc.exact()) {
    const auto& m = std::get<LabeledMatrix<Rat>>(doc.matrix);
    for (int r = 0; r < m.row_count(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < m.n; ++c) row.push_back(rat_to_string(m.at(r, c)));
      entries.push_back(std::move(row));
    }
  } else {
    const auto& m = std::get<LabeledMatrix<double>>(doc.matrix);
    for (int r = 0; r < m.row_count(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < m.n; ++c) row.push_back(m.at(r, c));
      entries.push_back(std::move(row));
    }
  }
  j["entries"] = std::move(entries);
  return j;
}

MatrixDocument matrix_from_json(const Json& j) {
  require(j.value("format", "") == kMatrixFormat, "not a matrix document");
  require(j.value("version", 0) == kFormatVersion, "unsupported version");
  const int n = j.at("n").get<int>();
  require(n >= 2, "matrix order below 2");
  const std::string regime = j.at("regime");
  MatrixDocument doc;
  doc.curve = curve_from_json(j.at("curve"));
  const Json& entries = j.at("entries");
  require(static_cast<int>(entries.size()) == pair_count(n), "row count mismatch");
  if (regime == "exact") {
    LabeledMatrix<Rat> m;
    m.n = n;
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) m.rows.emplace_back(i, k);
    m.entries.resize(static_cast<size_t>(pair_count(n)) * n);
    for (int r = 0; r < pair_count(n); ++r) {
      require(static_cast<int>(entries[r].size()) == n, "column count mismatch");
      for (int c = 0; c < n; ++c)
        m.at(r, c) = rat_from_string(entries[r][c].get<std::string>());
    }
    doc.matrix = std::move(m);
  } else if (regime == "floating") {
    LabeledMatrix<double> m;
    m.n = n;
    for (int i = 0; i < n; ++i)
      for (int k = i + 1; k < n; ++k) m.rows.emplace_back(i, k);
    m.entries.resize(static_cast<size_t>(pair_count(n)) * n);
    for (int r = 0; r < pair_count(n); ++r) {
      require(static_cast<int>(entries[r].size()) == n, "column count mismatch");
      for (int c = 0; c < n; ++c) m.at(r, c) = entries[r][c].get<double>();
    }
    doc.matrix = std::move(m);
  } else {
    throw std::invalid_argument("document: unknown regime " + regime);
  }
  // Structural zeros and nonnegativity are format invariants.
  if (doc.exact()) {
    const auto& m = std::get<LabeledMatrix<Rat>>(doc.matrix);
    for (int r = 0; r < m.row_count(); ++r) {
      const auto [i, k] = m.rows[r];
      for (int c = 0; c < n; ++c) {
        require(m.at(r, c) >= 0, "negative entry");
        if (c == i || c == k) require(m.at(r, c) == 0, "nonzero structural zero");
      }
    }
  } else {
    const auto& m = std::get<LabeledMatrix<double>>(doc.matrix);
    for (int r = 0; r < m.row_count(); ++r) {
      const auto [i, k] = m.rows[r];
      for (int c = 0; c < n; ++c) {
        require(m.at(r, c) >= 0, "negative entry");
        if (c == i || c == k) require(m.at(r, c) == 0, "nonzero structural zero");
      }
    }
  }
  return doc;
}

std::string matrix_to_csv(const MatrixDocument& doc) {
  std::ostringstream os;
  const int n = doc.n();
  os << "row";
  for (int c = 0; c < n; ++c) os << ',' << c + 1;
  os << '\n';
  for (int r = 0; r < pair_count(n); ++r) {
    const auto [i, j] = pair_at(n, r);
    os << i + 1 << '-' << j + 1;
    for (int c = 0; c < n; ++c) {
      os << ',';
      if (doc.exact())
        os << rat_to_string(std::get<LabeledMatrix<Rat>>(doc.matrix).at(r, c));
      else
        os << double_to_string(std::get<LabeledMatrix<double>>(doc.matrix).at(r, c));
    }
    os << '\n';
  }
  return os.str();
}

Json pattern_to_json(const SupportPattern& p) {
  Json j;
  j["n"] = p.n();
  j["cells"] = cells_to_json(p);
  j["digest"] = pattern_digest(p);
  return j;
}

SupportPattern pattern_from_json(const Json& j) {
  const int n = j.at("n").get<int>();
  SupportPattern p = SupportPattern::from_cells(n, cells_from_json(n, j.at("cells")));
  if (j.contains("digest"))
    require(j.at("digest").get<std::string>() == pattern_digest(p), "pattern digest mismatch");
  return p;
}

std::string pattern_digest(const SupportPattern& p) {
  return "fnv1a:" + fnv1a_hex(p.canonical_string());
}

namespace {

Json origin_to_json(const PartOrigin& o) {
  Json j;
  Json zc = Json::array();
  for (int c : o.zero_cols) zc.push_back(c + 1);
  j["zero_cols"] = std::move(zc);
  Json parts = Json::array();
  for (const auto& cls : o.partition) {
    Json p = Json::array();
    for (int c : cls) p.push_back(c + 1);
    parts.push_back(std::move(p));
  }
  j["partition"] = std::move(parts);
  return j;
}

PartOrigin origin_from_json(const Json& j) {
  PartOrigin o;
  for (const Json& c : j.at("zero_cols")) o.zero_cols.push_back(c.get<int>() - 1);
  for (const Json& cls : j.at("partition")) {
    std::vector<int> v;
    for (const Json& c : cls) v.push_back(c.get<int>() - 1);
    o.partition.push_back(std::move(v));
  }
  return o;
}

Json factor_to_json(const Rank1Factor& f) {
  Json j;
  Json a = Json::object();
  for (int r = 0; r < pair_count(f.n); ++r) {
    if (f.a[r].is_zero()) continue;
    const auto [i, k] = pair_at(f.n, r);
    a[std::to_string(i + 1) + "," + std::to_string(k + 1)] = cone_point_to_json(f.a[r]);
  }
  Json b = Json::object();
  for (int c = 0; c < f.n; ++c) {
    if (f.b[c].is_zero()) continue;
    b[std::to_string(c + 1)] = cone_point_to_json(f.b[c]);
  }
  j["a"] = std::move(a);
  j["b"] = std::move(b);
  return j;
}

Rank1Factor factor_from_json(int n, const Json& j) {
  Rank1Factor f;
  f.n = n;
  f.a.assign(pair_count(n), ConePoint<Rat>{});
  f.b.assign(n, ConePoint<Rat>{});
  for (const auto& [key, val] : j.at("a").items()) {
    const auto comma = key.find(',');
    require(comma != std::string::npos, "factor row key must be 'i,j'");
    const int i = std::stoi(key.substr(0, comma)) - 1;
    const int k = std::stoi(key.substr(comma + 1)) - 1;
    require(i >= 0 && i < k && k < n, "factor row key out of range");
    f.a[pair_index(n, i, k)] = cone_point_from_json(val);
  }
  for (const auto& [key, val] : j.at("b").items()) {
    const int c = std::stoi(key) - 1;
    require(c >= 0 && c < n, "factor column key out of range");
    f.b[c] = cone_point_from_json(val);
  }
  return f;
}

}  // namespace

Json certificate_to_json(const CoverCertificate& cert) {
  Json j;
  j["format"] = kCertFormat;
  j["version"] = kFormatVersion;
  j["kind"] = to_string(cert.kind);
  Json target;
  if (cert.target.pattern) {
    target["type"] = "pattern";
    target["n"] = cert.target.pattern->n();
    target["cells"] = cells_to_json(*cert.target.pattern);
    target["digest"] = cert.target.digest.empty() ? pattern_digest(*cert.target.pattern)
                                                  : cert.target.digest;
  } else {
    target["type"] = "pair-family-support";
    target["n"] = cert.target.family_n.str();
  }
  j["target"] = std::move(target);
  j["value"] = cert.value;
  if (cert.kind == CertKind::LowerRecursion) {
    Json base;
    base["n0"] = cert.base_n0;
    base["value"] = cert.base_value;
    base["method"] = cert.base_method;
    j["base"] = std::move(base);
    Json chain = Json::array();
    for (const RecursionStep& st : cert.chain) {
      Json step;
      step["n0"] = st.n0.str();
      step["n"] = st.n.str();
      step["bound"] = st.bound;
      chain.push_back(std::move(step));
    }
    j["chain"] = std::move(chain);
  } else {
    Json parts = Json::array();
    for (const CoverPart& p : cert.parts) {
      Json pj;
      pj["cells"] = cells_to_json(p.supp);
      if (p.origin) pj["origin"] = origin_to_json(*p.origin);
      if (p.factor) pj["factor"] = factor_to_json(*p.factor);
      parts.push_back(std::move(pj));
    }
    j["parts"] = std::move(parts);
  }
  j["note"] = cert.note;
  return j;
}

CoverCertificate certificate_from_json(const Json& j) {
  require(j.value("format", "") == kCertFormat, "not a certificate document");
  require(j.value("version", 0) == kFormatVersion, "unsupported version");
  CoverCertificate cert;
  const std::string kind = j.at("kind");
  if (kind == "exact")
    cert.kind = CertKind::Exact;
  else if (kind == "upper")
    cert.kind = CertKind::Upper;
  else if (kind == "lower-recursion")
    cert.kind = CertKind::LowerRecursion;
  else
    throw std::invalid_argument("document: unknown certificate kind " + kind);

  const Json& target = j.at("target");
  const std::string ttype = target.at("type");
  if (ttype == "pattern") {
    const int n = target.at("n").get<int>();
    cert.target =
        TargetRef::materialized(SupportPattern::from_cells(n, cells_from_json(n, target.at("cells"))));
    if (target.contains("digest"))
      cert.target.digest = target.at("digest").get<std::string>();
  } else if (ttype == "pair-family-support") {
    cert.target = TargetRef::family(BigInt(target.at("n").get<std::string>()));
  } else {
    throw std::invalid_argument("document: unknown target type " + ttype);
  }
  cert.value = j.at("value").get<int>();

  if (cert.kind == CertKind::LowerRecursion) {
    const Json& base = j.at("base");
    cert.base_n0 = base.at("n0").get<int>();
    cert.base_value = base.at("value").get<int>();
    cert.base_method = base.value("method", "");
    for (const Json& st : j.at("chain")) {
      RecursionStep step;
      step.n0 = BigInt(st.at("n0").get<std::string>());
      step.n = BigInt(st.at("n").get<std::string>());
      step.bound = st.at("bound").get<int>();
      cert.chain.push_back(std::move(step));
    }
  } else {
    require(cert.target.pattern.has_value(), "cover certificate needs a pattern target");
    const int n = cert.target.pattern->n();
    for (const Json& pj : j.at("parts")) {
      CoverPart part;
      part.supp = SupportPattern::from_cells(n, cells_from_json(n, pj.at("cells")));
      if (pj.contains("origin")) part.origin = origin_from_json(pj.at("origin"));
      if (pj.contains("factor")) part.factor = factor_from_json(n, pj.at("factor"));
      cert.parts.push_back(std::move(part));
    }
  }
  cert.note = j.value("note", "");
  return cert;
}

Json lift_to_json(const SocLiftDescription& lift) {
  Json j;
  j["format"] = kLiftFormat;
  j["version"] = kFormatVersion;
  j["k"] = lift.k;
  j["lifted_vars"] = lift.lifted_names;
  j["ambient_vars"] = lift.ambient_names;
  Json cons = Json::array();
  for (const LinearConstraint& c : lift.constraints) {
    Json cj;
    Json lv = Json::array();
    for (const Rat& r : c.lifted) lv.push_back(rat_to_string(r));
    Json av = Json::array();
    for (const Rat& r : c.ambient) av.push_back(rat_to_string(r));
    cj["lifted"] = std::move(lv);
    cj["ambient"] = std::move(av);
    cons.push_back(std::move(cj));
  }
  j["constraints"] = std::move(cons);
  Json proj = Json::array();
  for (const auto& row : lift.projection) {
    Json rj = Json::array();
    for (const Rat& r : row) rj.push_back(rat_to_string(r));
    proj.push_back(std::move(rj));
  }
  j["projection"] = std::move(proj);
  return j;
}

SocLiftDescription lift_from_json(const Json& j) {
  require(j.value("format", "") == kLiftFormat, "not a lift document");
  require(j.value("version", 0) == kFormatVersion, "unsupported version");
  SocLiftDescription lift;
  lift.k = j.at("k").get<int>();
  lift.lifted_names = j.at("lifted_vars").get<std::vector<std::string>>();
  lift.ambient_names = j.at("ambient_vars").get<std::vector<std::string>>();
  require(static_cast<int>(lift.lifted_names.size()) == 3 * lift.k,
          "lifted name count must be 3k");
  for (const Json& cj : j.at("constraints")) {
    LinearConstraint c;
    for (const Json& v : cj.at("lifted")) c.lifted.push_back(rat_from_string(v.get<std::string>()));
    for (const Json& v : cj.at("ambient"))
      c.ambient.push_back(rat_from_string(v.get<std::string>()));
    require(c.lifted.size() == lift.lifted_names.size() &&
                c.ambient.size() == lift.ambient_names.size(),
            "constraint arity mismatch");
    lift.constraints.push_back(std::move(c));
  }
  for (const Json& rj : j.at("projection")) {
    std::vector<Rat> row;
    for (const Json& v : rj) row.push_back(rat_from_string(v.get<std::string>()));
    require(row.size() == lift.lifted_names.size(), "projection arity mismatch");
    lift.projection.push_back(std::move(row));
  }
  require(lift.projection.size() == lift.ambient_names.size(), "projection row count");
  return lift;
}

Json support_doc_to_json(const SupportPattern& p) {
  Json j;
  j["format"] = kSupportFormat;
  j["version"] = kFormatVersion;
  j["n"] = p.n();
  j["cells"] = cells_to_json(p);
  j["digest"] = pattern_digest(p);
  const ColumnGraph g = canonical_graph(p);
  Json graph;
  Json zc = Json::array();
  for (int c : g.zero_cols()) zc.push_back(c + 1);
  graph["zero_cols"] = std::move(zc);
  Json zr = Json::array();
  for (auto [i, k] : g.zero_rows()) zr.push_back(Json::array({i + 1, k + 1}));
  graph["zero_rows"] = std::move(zr);
  Json comps = Json::array();
  for (const auto& comp : g.components) {
    Json cj = Json::array();
    for (int c : comp) cj.push_back(c + 1);
    comps.push_back(std::move(cj));
  }
  graph["components"] = std::move(comps);
  j["column_graph"] = std::move(graph);
  return j;
}

std::string dump_document(const Json& j) { return j.dump(2) + "\n"; }

void save_document(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << dump_document(j);
  if (!out) throw std::runtime_error("write failed: " + path);
}

Json load_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  Json j;
  in >> j;
  return j;
}

std::string double_to_string(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf, 16);
}

}  // namespace soccover
