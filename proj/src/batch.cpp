#include "curvavol/batch.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "curvavol/error.hpp"
#include "curvavol/gram.hpp"
#include "curvavol/models.hpp"
#include "curvavol/polyarea.hpp"
#include "curvavol/seidel.hpp"

namespace curvavol {

namespace {

using nlohmann::json;

constexpr std::pair<InstanceKind, std::string_view> kKindNames[] = {
    {InstanceKind::TetraAngles, "tetra_angles"},
    {InstanceKind::TetraEdgesEuclidean, "tetra_edges_euclidean"},
    {InstanceKind::IdealTetra, "ideal_tetra"},
    {InstanceKind::Orthoscheme, "orthoscheme"},
    {InstanceKind::Bolyai, "bolyai"},
    {InstanceKind::Triangle, "triangle"},
    {InstanceKind::CyclicQuad, "cyclic_quad"},
    {InstanceKind::BicentricQuad, "bicentric_quad"},
    {InstanceKind::Trapezoid, "trapezoid"},
    {InstanceKind::SeidelFamily, "seidel_family"},
};

const std::set<std::string> kAngleParams{"A", "B", "C", "D", "E", "F", "alpha", "beta", "gamma"};

const std::set<std::string> kAllMethods{
    "dm",       "sforza",      "mc",          "cm",       "milnor",       "schlafli", "bolyai",
    "sin_half", "tan_quarter", "sin_quarter", "bilinski", "gauss_bonnet", "heron",    "brahmagupta",
    "bicentric", "sokolova",   "euclidean",   "family"};

std::vector<std::string> required_params(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::TetraAngles: return {"A", "B", "C", "D", "E", "F"};
    case InstanceKind::TetraEdgesEuclidean: return {"l01", "l02", "l03", "l12", "l13", "l23"};
    case InstanceKind::IdealTetra:
    case InstanceKind::Orthoscheme: return {"A", "B", "C"};
    case InstanceKind::Bolyai: return {"alpha", "beta", "z"};
    case InstanceKind::Triangle: return {"a", "b", "c"};
    case InstanceKind::CyclicQuad:
    case InstanceKind::BicentricQuad:
    case InstanceKind::Trapezoid: return {"a", "b", "c", "d"};
    case InstanceKind::SeidelFamily: return {"A", "c"};
  }
  return {};
}

std::optional<Space> space_from_string(const std::string& s) {
  if (s == "E3") return Space::E3;
  if (s == "S3") return Space::S3;
  if (s == "H3") return Space::H3;
  return std::nullopt;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Value plus optional error estimate from one method.
struct Computed {
  double value;
  std::optional<double> error;
};

Computed from(const VolumeResult& r) { return {r.value, r.error_estimate}; }
Computed from(const AreaResult& r) { return {static_cast<double>(r.value), std::nullopt}; }
Computed from(const McEstimate& r) { return {r.mean, r.std_error}; }

AreaFormula formula_of(const std::string& m) {
  if (m == "sin_half") return AreaFormula::SinHalf;
  if (m == "tan_quarter") return AreaFormula::TanQuarter;
  if (m == "sin_quarter") return AreaFormula::SinQuarter;
  if (m == "bilinski") return AreaFormula::Bilinski;
  return AreaFormula::GaussBonnet;
}

KleinTetrahedron klein_from_angles(const DihedralAngleSet& angles) {
  const GramMatrix G = gram_from_angles(angles);
  const TetraClass cls = classify(G);
  if (!cls.hyperbolic()) throw Error(ErrorCode::NotCompactHyperbolic, cls.reason);
  return embed_from_edge_lengths(edge_lengths(G, cls));
}

/// Everything a method needs, resolved once per instance.
struct Prepared {
  const InstanceSpec& spec;
  const RunConfig& cfg;
  std::optional<DihedralAngleSet> angles;  // tetrahedral kinds
  std::optional<double> gram_det;
  std::optional<KleinTetrahedron> klein;  // bolyai: the constructed orthoscheme
  double gamma = 0.0;                     // bolyai

  double p(const std::string& name) const { return spec.params.at(name); }
};

Computed compute(const Prepared& in, const std::string& method) {
  const auto& spec = in.spec;
  const auto& cfg = in.cfg;
  switch (spec.kind) {
    case InstanceKind::TetraAngles:
    case InstanceKind::Orthoscheme:
    case InstanceKind::Bolyai: {
      const DihedralAngleSet& a = *in.angles;
      if (method == "dm") return from(volume_dm(a, cfg.tol));
      if (method == "sforza")
        return from(spec.space == Space::S3 ? volume_sforza_s3(a, cfg.tol) : volume_sforza_h3(a, cfg.tol));
      if (method == "schlafli") return from(volume_orthoscheme_spherical(in.p("A"), in.p("B"), in.p("C"), cfg.tol));
      if (method == "mc") {
        const KleinTetrahedron t = in.klein ? *in.klein : klein_from_angles(a);
        return from(mc_volume(t, cfg.mc_samples, cfg.mc_seed, 1));
      }
      if (method == "bolyai") return from(volume_bolyai(in.p("alpha"), in.p("beta"), in.gamma, in.p("z"), cfg.tol));
      break;
    }
    case InstanceKind::TetraEdgesEuclidean: {
      EdgeLengthSet d;
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) d(i, j) = in.p("l" + std::to_string(i) + std::to_string(j));
      return from(volume_euclidean_cm(d));
    }
    case InstanceKind::IdealTetra: return from(volume_ideal(in.p("A"), in.p("B"), in.p("C")));
    case InstanceKind::Triangle: {
      const TriSides t{in.p("a"), in.p("b"), in.p("c")};
      if (method == "heron") return {static_cast<double>(heron_euclidean(t.a, t.b, t.c)), std::nullopt};
      return from(triangle_area(t, formula_of(method)));
    }
    case InstanceKind::CyclicQuad: {
      const QuadSides q{in.p("a"), in.p("b"), in.p("c"), in.p("d")};
      if (method == "brahmagupta") return {static_cast<double>(brahmagupta_euclidean(q)), std::nullopt};
      return from(cyclic_quad_area(q, formula_of(method)));
    }
    case InstanceKind::BicentricQuad: {
      const QuadSides q{in.p("a"), in.p("b"), in.p("c"), in.p("d")};
      if (method == "bicentric") return from(bicentric_area(q));
      if (std::abs(q.a + q.c - q.b - q.d) > 1e-12) throw Error(ErrorCode::NotBicentric, "a + c must equal b + d");
      return from(cyclic_quad_area(q, AreaFormula::SinQuarter));
    }
    case InstanceKind::Trapezoid: {
      const QuadSides q{in.p("a"), in.p("b"), in.p("c"), in.p("d")};
      if (method == "euclidean")
        return {static_cast<double>(trapezoid_area_euclidean(q.a, q.b, q.c, q.d)), std::nullopt};
      return from(trapezoid_area(q));
    }
    case InstanceKind::SeidelFamily: {
      const auto m = spherical_family_member(in.p("A"), in.p("c"));
      if (method == "family") return {m.volume, std::nullopt};
      return from(volume_sforza_s3(m.angles, cfg.tol));
    }
  }
  throw Error(ErrorCode::InvalidInput, "method " + method + " does not apply");
}

/// Angles and Gram determinant for tetrahedral kinds.  Throws on invalid input.
void prepare(Prepared& in) {
  const auto& spec = in.spec;
  switch (spec.kind) {
    case InstanceKind::TetraAngles:
      in.angles = DihedralAngleSet{in.p("A"), in.p("B"), in.p("C"), in.p("D"), in.p("E"), in.p("F")};
      break;
    case InstanceKind::Orthoscheme: in.angles = orthoscheme_angles(in.p("A"), in.p("B"), in.p("C")); break;
    case InstanceKind::Bolyai: {
      in.gamma = spec.params.count("gamma") ? in.p("gamma") : bolyai_gamma(in.p("alpha"), in.p("beta"), in.p("z"));
      in.klein = orthoscheme_from_bolyai_params(in.p("alpha"), in.p("beta"), in.gamma, in.p("z"));
      in.angles = dihedral_angles_from_vertices(*in.klein);
      break;
    }
    case InstanceKind::IdealTetra:
      in.gram_det = gram_from_angles({in.p("A"), in.p("B"), in.p("C"), in.p("A"), in.p("B"), in.p("C")}).det();
      return;
    case InstanceKind::SeidelFamily:
      in.gram_det = gram_from_angles(spherical_family_member(in.p("A"), in.p("c")).angles).det();
      return;
    default: return;
  }
  in.angles->validate();
  in.gram_det = gram_from_angles(*in.angles).det();
}

std::vector<ReportRow> run_instance(std::size_t index, const ParsedInstance& inst, const RunConfig& cfg) {
  ReportRow base;
  base.index = index;
  base.id = inst.spec.id;
  base.kind = std::string(to_string(inst.spec.kind));
  base.space = std::string(to_string(inst.spec.space));
  auto error_row = [&](const std::string& method, const std::string& msg) {
    ReportRow r = base;
    r.method = method;
    r.status = "error";
    r.message = msg;
    return r;
  };
  if (!inst.ok()) return {error_row("", inst.error)};

  InstanceSpec spec = inst.spec;
  if (cfg.degrees) {
    for (auto& [name, v] : spec.params)
      if (kAngleParams.count(name)) v *= std::numbers::pi / 180.0;
  }

  std::vector<std::string> methods = methods_for(spec.kind, spec.space);
  std::erase_if(methods, [&](const std::string& m) {
    if (cfg.methods.empty()) return m == "mc";
    return std::find(cfg.methods.begin(), cfg.methods.end(), m) == cfg.methods.end();
  });

  Prepared in{spec, cfg, {}, {}, {}, 0.0};
  try {
    prepare(in);
  } catch (const std::exception& e) {
    return {error_row("", e.what())};
  }
  base.gram_det = in.gram_det;

  std::vector<ReportRow> rows;
  for (const auto& m : methods) {
    ReportRow r = base;
    r.method = m;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Computed c = compute(in, m);
      r.status = "ok";
      r.value = c.value;
      r.error_estimate = c.error;
    } catch (const std::exception& e) {
      r.status = "error";
      r.message = e.what();
    }
    if (cfg.timing) r.elapsed_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back(std::move(r));
  }

  if (cfg.crosscheck) {
    std::optional<double> lo, hi;
    for (const auto& r : rows) {
      if (r.status != "ok" || r.method == "mc") continue;
      lo = lo ? std::min(*lo, *r.value) : *r.value;
      hi = hi ? std::max(*hi, *r.value) : *r.value;
    }
    if (lo)
      for (auto& r : rows) r.crosscheck = *hi - *lo;
  }
  return rows;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  return cells;
}

std::optional<double> parse_opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return std::stod(s);
}

std::optional<double> json_opt(const json& v) {
  if (v.is_null()) return std::nullopt;
  return v.get<double>();
}

}  // namespace

std::string_view to_string(InstanceKind kind) noexcept {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

std::vector<std::string> methods_for(InstanceKind kind, Space space) {
  const bool h = space == Space::H3, s = space == Space::S3, e = space == Space::E3;
  switch (kind) {
    case InstanceKind::TetraAngles:
      if (h) return {"dm", "sforza", "mc"};
      if (s) return {"sforza"};
      break;
    case InstanceKind::TetraEdgesEuclidean:
      if (e) return {"cm"};
      break;
    case InstanceKind::IdealTetra:
      if (h) return {"milnor"};
      break;
    case InstanceKind::Orthoscheme:
      if (h) return {"dm", "sforza", "mc"};
      if (s) return {"schlafli", "sforza"};
      break;
    case InstanceKind::Bolyai:
      if (h) return {"bolyai", "dm", "mc"};
      break;
    case InstanceKind::Triangle:
      if (h) return {"sin_half", "tan_quarter", "sin_quarter", "bilinski", "gauss_bonnet"};
      if (e) return {"heron"};
      break;
    case InstanceKind::CyclicQuad:
      if (h) return {"sin_half", "tan_quarter", "sin_quarter", "bilinski", "gauss_bonnet"};
      if (e) return {"brahmagupta"};
      break;
    case InstanceKind::BicentricQuad:
      if (h) return {"bicentric", "sin_quarter"};
      break;
    case InstanceKind::Trapezoid:
      if (h) return {"sokolova"};
      if (e) return {"euclidean"};
      break;
    case InstanceKind::SeidelFamily:
      if (s) return {"family", "sforza"};
      break;
  }
  return {};
}

std::vector<ParsedInstance> parse_instances(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("instance file is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::InvalidInput, "instance file must hold a JSON array");

  std::vector<ParsedInstance> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& item = doc[i];
    ParsedInstance p;
    p.spec.id = "#" + std::to_string(i);
    auto fail = [&](const std::string& msg) {
      p.error = "InvalidInput: " + msg;
      out.push_back(p);
    };
    if (!item.is_object()) {
      fail("entry is not an object");
      continue;
    }
    if (item.contains("id") && item["id"].is_string()) p.spec.id = item["id"].get<std::string>();
    if (!item.contains("kind") || !item["kind"].is_string()) {
      fail("missing kind");
      continue;
    }
    const std::string kind = item["kind"].get<std::string>();
    const auto k = std::find_if(std::begin(kKindNames), std::end(kKindNames),
                                [&](const auto& kv) { return kv.second == kind; });
    if (k == std::end(kKindNames)) {
      fail("unknown kind '" + kind + "'");
      continue;
    }
    p.spec.kind = k->first;
    const auto first_space = [&] {
      for (Space s : {Space::H3, Space::S3, Space::E3})
        if (!methods_for(p.spec.kind, s).empty()) return s;
      return Space::H3;
    };
    if (item.contains("space")) {
      const auto s = item["space"].is_string() ? space_from_string(item["space"].get<std::string>()) : std::nullopt;
      if (!s) {
        fail("space must be one of E3, S3, H3");
        continue;
      }
      p.spec.space = *s;
    } else {
      p.spec.space = first_space();
    }
    if (methods_for(p.spec.kind, p.spec.space).empty()) {
      fail(kind + " is not available in " + std::string(to_string(p.spec.space)));
      continue;
    }
    if (!item.contains("params") || !item["params"].is_object()) {
      fail("missing params object");
      continue;
    }
    std::string bad;
    for (const auto& [name, v] : item["params"].items()) {
      if (!v.is_number()) {
        bad = "parameter '" + name + "' is not a number";
        break;
      }
      p.spec.params[name] = v.get<double>();
    }
    for (const auto& name : required_params(p.spec.kind))
      if (bad.empty() && !p.spec.params.count(name)) bad = "missing parameter '" + name + "'";
    if (!bad.empty()) {
      fail(bad);
      continue;
    }
    out.push_back(p);
  }
  return out;
}

void RunConfig::validate() const {
  tol.validate();
  for (const auto& m : methods)
    if (!kAllMethods.count(m)) throw Error(ErrorCode::InvalidInput, "unknown method '" + m + "'");
  const bool mc = std::find(methods.begin(), methods.end(), "mc") != methods.end();
  if (mc && mc_samples < 1000) throw Error(ErrorCode::InvalidInput, "mc needs at least 1000 samples");
  if (threads == 0) throw Error(ErrorCode::InvalidInput, "threads must be positive");
}

bool Report::any_error() const {
  return std::any_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.status != "ok"; });
}

Report run_batch(const std::vector<ParsedInstance>& instances, const RunConfig& cfg) {
  cfg.validate();
  std::vector<std::vector<ReportRow>> per(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < instances.size();) per[i] = run_instance(i, instances[i], cfg);
  };
  const unsigned n = std::min<std::size_t>(cfg.threads, std::max<std::size_t>(instances.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Report report;
  report.timing = cfg.timing;
  for (auto& rows : per)
    for (auto& r : rows) report.rows.push_back(std::move(r));
  return report;
}

std::vector<std::string> report_columns(bool timing) {
  std::vector<std::string> cols{"index", "id",       "kind",       "space",     "method", "status",
                                "value", "error_estimate", "gram_det", "crosscheck", "message"};
  if (timing) cols.push_back("elapsed_s");
  return cols;
}

std::string emit(const Report& report, Format format) {
  std::ostringstream out;
  auto real = [&](const std::optional<double>& v, const char* missing) {
    return v && std::isfinite(*v) ? format_real(*v) : std::string(missing);
  };
  if (format == Format::Csv) {
    const auto cols = report_columns(report.timing);
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& r : report.rows) {
      out << r.index << "," << csv_escape(r.id) << "," << r.kind << "," << r.space << "," << r.method << ","
          << r.status << "," << real(r.value, "") << "," << real(r.error_estimate, "") << ","
          << real(r.gram_det, "") << "," << real(r.crosscheck, "") << "," << csv_escape(r.message);
      if (report.timing) out << "," << real(r.elapsed_s, "");
      out << "\n";
    }
    return out.str();
  }
  if (report.rows.empty()) return "[]\n";
  auto str = [](const std::string& s) { return json(s).dump(); };
  out << "[\n";
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& r = report.rows[i];
    out << "  {\"index\": " << r.index << ", \"id\": " << str(r.id) << ", \"kind\": " << str(r.kind)
        << ", \"space\": " << str(r.space) << ", \"method\": " << str(r.method) << ", \"status\": " << str(r.status)
        << ", \"value\": " << real(r.value, "null") << ", \"error_estimate\": " << real(r.error_estimate, "null")
        << ", \"gram_det\": " << real(r.gram_det, "null") << ", \"crosscheck\": " << real(r.crosscheck, "null")
        << ", \"message\": " << str(r.message);
    if (report.timing) out << ", \"elapsed_s\": " << real(r.elapsed_s, "null");
    out << "}" << (i + 1 < report.rows.size() ? "," : "") << "\n";
  }
  out << "]\n";
  return out.str();
}

Report parse_report(const std::string& text, Format format) {
  Report report;
  if (format == Format::Csv) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorCode::InvalidInput, "empty CSV");
    const auto header = csv_split(line);
    report.timing = header.size() == report_columns(true).size();
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto c = csv_split(line);
      if (c.size() != header.size()) throw Error(ErrorCode::InvalidInput, "ragged CSV row");
      ReportRow r;
      r.index = std::stoul(c[0]);
      r.id = c[1];
      r.kind = c[2];
      r.space = c[3];
      r.method = c[4];
      r.status = c[5];
      r.value = parse_opt(c[6]);
      r.error_estimate = parse_opt(c[7]);
      r.gram_det = parse_opt(c[8]);
      r.crosscheck = parse_opt(c[9]);
      r.message = c[10];
      if (report.timing) r.elapsed_s = parse_opt(c[11]);
      report.rows.push_back(std::move(r));
    }
    return report;
  }
  const json doc = json::parse(text);
  for (const auto& o : doc) {
    ReportRow r;
    r.index = o.at("index").get<std::size_t>();
    r.id = o.at("id").get<std::string>();
    r.kind = o.at("kind").get<std::string>();
    r.space = o.at("space").get<std::string>();
    r.method = o.at("method").get<std::string>();
    r.status = o.at("status").get<std::string>();
    r.value = json_opt(o.at("value"));
    r.error_estimate = json_opt(o.at("error_estimate"));
    r.gram_det = json_opt(o.at("gram_det"));
    r.crosscheck = json_opt(o.at("crosscheck"));
    r.message = o.at("message").get<std::string>();
    if (o.contains("elapsed_s")) {
      report.timing = true;
      r.elapsed_s = json_opt(o.at("elapsed_s"));
    }
    report.rows.push_back(std::move(r));
  }
  return report;
}

}  // namespace curvavol
