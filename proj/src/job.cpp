#include "symdiff/job.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <future>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "symdiff/parser.hpp"
#include "symdiff/random.hpp"

namespace symdiff {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Entry {
  std::string key;
  std::string value;
  std::size_t line;
  /// 1-based column where the value starts.
  std::size_t column;
};

struct Section {
  std::string kind; // "ring", "ideal", "query"
  std::string name;
  std::size_t line;
  std::vector<Entry> entries;

  const Entry* find(const std::string& key) const {
    const Entry* hit = nullptr;
    for (const auto& e : entries)
      if (e.key == key) hit = &e;
    return hit;
  }
  std::vector<const Entry*> all(const std::string& key) const {
    std::vector<const Entry*> out;
    for (const auto& e : entries)
      if (e.key == key) out.push_back(&e);
    return out;
  }
};

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

[[noreturn]] void fail_at(std::size_t line, std::size_t column, const std::string& msg,
                          ErrorCode code = ErrorCode::ParseError) {
  throw ParseError(code, msg, line, column);
}

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto content = trim(raw);
    if (content.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    const auto indent = raw.find_first_not_of(" \t") + 1;
    if (content.front() == '[') {
      if (content.back() != ']') fail_at(line_no, indent + content.size(), "expected ']'");
      std::istringstream header(content.substr(1, content.size() - 2));
      Section s;
      s.line = line_no;
      header >> s.kind >> s.name;
      std::string extra;
      if (header >> extra) fail_at(line_no, indent, "unexpected text in section header");
      s.kind = lower(s.kind);
      if (s.kind != "ring" && s.kind != "ideal" && s.kind != "query")
        fail_at(line_no, indent + 1, "unknown section '" + s.kind + "'");
      if (s.kind == "ideal" && s.name.empty()) fail_at(line_no, indent, "ideal sections need a name");
      if (s.kind != "ideal" && !s.name.empty()) fail_at(line_no, indent, "unexpected name in section header");
      out.push_back(std::move(s));
    } else {
      const auto eq = raw.find('=');
      if (eq == std::string_view::npos) fail_at(line_no, indent, "expected 'key = value'");
      if (out.empty()) fail_at(line_no, indent, "entry outside of a section");
      Entry e;
      e.key = lower(trim(raw.substr(0, eq)));
      if (e.key.empty()) fail_at(line_no, indent, "missing key");
      const auto vstart = raw.find_first_not_of(" \t", eq + 1);
      e.column = vstart == std::string_view::npos ? eq + 2 : vstart + 1;
      e.value = trim(raw.substr(eq + 1));
      e.line = line_no;
      out.back().entries.push_back(std::move(e));
    }
    if (nl == text.size()) break;
  }
  return out;
}

/// Splits on `sep`, keeping the 1-based column of each piece.
std::vector<std::pair<std::string, std::size_t>> split_list(const Entry& e, char sep) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t start = 0;
  const auto& v = e.value;
  for (std::size_t i = 0; i <= v.size(); ++i) {
    if (i < v.size() && v[i] != sep) continue;
    const auto piece = std::string_view(v).substr(start, i - start);
    const auto lead = piece.find_first_not_of(" \t");
    if (lead != std::string_view::npos) out.emplace_back(trim(piece), e.column + start + lead);
    start = i + 1;
  }
  return out;
}

const Entry& require(const Section& s, const std::string& key) {
  const auto* e = s.find(key);
  if (!e) fail_at(s.line, 1, "missing '" + key + "' in [" + s.kind + "] section");
  return *e;
}

unsigned parse_unsigned(const Entry& e) {
  if (e.value.empty() || !std::all_of(e.value.begin(), e.value.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail_at(e.line, e.column, "expected a non-negative integer for '" + e.key + "'");
  try {
    return static_cast<unsigned>(std::stoul(e.value));
  } catch (const std::exception&) {
    fail_at(e.line, e.column, "integer out of range for '" + e.key + "'");
  }
}

std::uint64_t parse_prime(const Entry& e) {
  const auto p = parse_unsigned(e);
  if (!is_prime(p)) fail_at(e.line, e.column, "p = " + e.value + " is not a prime", ErrorCode::InvalidArgument);
  return p;
}

/// Re-raises errors from a nested parser at the right place in the file.
template <class F>
auto located(const Entry& e, std::size_t column, F&& f) {
  try {
    return f();
  } catch (const ParseError& err) {
    // Nested parsers report line 1; shift onto the file position.
    std::string msg = err.what();
    if (auto at = msg.rfind(" at line "); at != std::string::npos) msg = msg.substr(0, at);
    if (auto colon = msg.find(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
    throw ParseError(err.code(), msg, e.line, column + err.column() - 1);
  } catch (const Error& err) {
    std::string msg = err.what();
    if (auto colon = msg.find(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
    throw ParseError(err.code(), msg, e.line, column);
  }
}

Polynomial poly_at(const RingPtr& ring, const Entry& e, const std::string& text, std::size_t column) {
  if (!ring) fail_at(e.line, column, "polynomials need a [ring] section first");
  return parse_polynomial(ring, text, e.line, column);
}

DomainKind parse_domain(const Entry& e) {
  const auto v = lower(e.value);
  if (v == "q") return DomainKind::RationalsQ;
  if (v == "fp" || v == "f_p") return DomainKind::PrimeFieldFp;
  if (v == "fp(t)" || v == "f_p(t)") return DomainKind::RationalFunctionsFpT;
  if (v == "z(p)" || v == "z_(p)") return DomainKind::PLocalIntegersZp;
  if (v == "z[t](p)" || v == "z[t]_(p)") return DomainKind::PLocalPolyFracZtp;
  fail_at(e.line, e.column, "unknown domain '" + e.value + "'");
}

void parse_ring(const Section& s, JobSpec& job) {
  const auto& dom = require(s, "domain");
  const auto kind = parse_domain(dom);
  std::uint64_t p = 0;
  if (kind != DomainKind::RationalsQ) p = parse_prime(require(s, "p"));
  const auto domain = DomainSpec::make(kind, p);

  const auto& vars_entry = require(s, "vars");
  std::vector<std::string> vars;
  std::string normalized = vars_entry.value;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::replace(normalized.begin(), normalized.end(), ';', ' ');
  std::istringstream in(normalized);
  for (std::string v; in >> v;) vars.push_back(v);
  if (vars.empty()) fail_at(vars_entry.line, vars_entry.column, "at least one variable is required");

  std::optional<MonomialOrder> order;
  if (const auto* o = s.find("order")) {
    const auto v = lower(o->value);
    if (v == "lex") order = MonomialOrder::lex(vars.size());
    else if (v == "grevlex") order = MonomialOrder::grevlex(vars.size());
    else fail_at(o->line, o->column, "unknown order '" + o->value + "'");
  }
  job.ring = located(vars_entry, vars_entry.column, [&] { return make_ring(domain, vars, order); });

  job.lift.var_images.assign(vars.size(), std::nullopt);
  const Entry* first_lift = nullptr;
  for (const auto& e : s.entries) {
    if (e.key == "domain" || e.key == "p" || e.key == "vars" || e.key == "order") continue;
    if (!e.key.starts_with("lift.")) fail_at(e.line, 1, "unknown key '" + e.key + "' in [ring]");
    if (!first_lift) first_lift = &e;
    const auto target = e.key.substr(5);
    auto image = poly_at(job.ring, e, e.value, e.column);
    if (target == "t") {
      if (!domain.has_t()) fail_at(e.line, 1, "the domain has no parameter t", ErrorCode::NoParameterT);
      job.lift.t_image = std::move(image);
      continue;
    }
    const auto it = std::find_if(vars.begin(), vars.end(), [&](const std::string& v) { return lower(v) == target; });
    if (it == vars.end()) fail_at(e.line, 1, "lift of undeclared variable '" + target + "'", ErrorCode::UndeclaredVariable);
    job.lift.var_images[static_cast<std::size_t>(it - vars.begin())] = std::move(image);
  }
  if (first_lift) located(*first_lift, first_lift->column, [&] { validate_lift(job.ring, job.lift); return 0; });
}

PowerKind kind_at(const Entry& e, const std::string& text, std::size_t column, const LiftSpec& lift) {
  auto k = located(e, column, [&] { return parse_power_kind(text); });
  if (k.type == PowerKind::Type::Mixed || k.type == PowerKind::Type::DeltaPower) k.lift = lift;
  return k;
}

Query parse_query(const Section& s, const JobSpec& job, std::size_t index) {
  Query q;
  q.index = index;
  q.line = s.line;
  const auto& type = require(s, "type");
  const auto t = lower(type.value);
  if (t == "member") q.type = Query::Type::Member;
  else if (t == "separate") q.type = Query::Type::Separate;
  else if (t == "compare") q.type = Query::Type::Compare;
  else if (t == "generators") q.type = Query::Type::Generators;
  else if (t == "verify-paper") q.type = Query::Type::VerifyPaper;
  else fail_at(type.line, type.column, "unknown query type '" + type.value + "'");

  std::vector<std::string> allowed{"type"};
  auto want = [&](std::initializer_list<const char*> keys) { allowed.insert(allowed.end(), keys.begin(), keys.end()); };

  if (q.type == Query::Type::VerifyPaper) {
    want({"p"});
    if (const auto* p = s.find("p")) q.p = parse_prime(*p);
  } else {
    want({"ideal"});
    const auto& ideal = require(s, "ideal");
    if (!job.ideals.contains(ideal.value))
      fail_at(ideal.line, ideal.column, "unknown ideal '" + ideal.value + "'");
    q.ideal = ideal.value;
  }

  switch (q.type) {
  case Query::Type::Member:
  case Query::Type::Separate: {
    want({"kind", "f", "operator"});
    const auto& k = require(s, "kind");
    q.kinds.push_back(kind_at(k, k.value, k.column, job.lift));
    const auto& f = require(s, "f");
    q.polys.push_back(poly_at(job.ring, f, f.value, f.column));
    if (q.type == Query::Type::Separate) {
      const auto ty = q.kinds[0].type;
      if (ty != PowerKind::Type::Differential && ty != PowerKind::Type::Mixed)
        fail_at(k.line, k.column, "separate needs a differential or mixed kind", ErrorCode::InvalidArgument);
      if (const auto* op = s.find("operator")) {
        auto parsed = located(*op, op->column, [&] { return parse_operator(op->value, *job.ring); });
        parsed.lift = job.lift;
        q.replay = std::move(parsed);
      }
    } else if (s.find("operator")) {
      fail_at(s.find("operator")->line, 1, "'operator' is only valid in separate queries");
    }
    break;
  }
  case Query::Type::Compare: {
    want({"kinds", "corpus", "f", "random", "expect"});
    const auto& ks = require(s, "kinds");
    for (const auto& [text, col] : split_list(ks, ';')) q.kinds.push_back(kind_at(ks, text, col, job.lift));
    if (q.kinds.empty()) fail_at(ks.line, ks.column, "no kinds given");
    for (const auto* c : s.all("corpus"))
      for (const auto& [text, col] : split_list(*c, ';')) q.polys.push_back(poly_at(job.ring, *c, text, col));
    for (const auto* f : s.all("f")) q.polys.push_back(poly_at(job.ring, *f, f->value, f->column));
    if (const auto* r = s.find("random")) q.random_count = parse_unsigned(*r);
    if (const auto* ex = s.find("expect")) {
      if (lower(ex->value) != "equal") fail_at(ex->line, ex->column, "expect must be 'equal'");
      q.expect_equal = true;
    }
    if (q.polys.empty() && q.random_count == 0) fail_at(s.line, 1, "compare needs a corpus or random = <count>");
    break;
  }
  case Query::Type::Generators: {
    want({"n", "linearity", "degree_bound"});
    const auto& n = require(s, "n");
    q.n = parse_unsigned(n);
    if (q.n < 1) fail_at(n.line, n.column, "n must be at least 1");
    if (const auto* lin = s.find("linearity")) {
      const auto v = lower(lin->value);
      if (v == "base") q.linearity = Linearity::BaseLinear;
      else if (v == "zlinear") q.linearity = Linearity::ZLinear;
      else fail_at(lin->line, lin->column, "linearity must be 'base' or 'zlinear'");
    }
    if (const auto* d = s.find("degree_bound")) q.degree_bound = parse_unsigned(*d);
    break;
  }
  case Query::Type::VerifyPaper: break;
  }

  for (const auto& e : s.entries)
    if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end())
      fail_at(e.line, 1, "unknown key '" + e.key + "' in " + t + " query");
  return q;
}

} // namespace

JobSpec parse_job(std::string_view text) {
  JobSpec job;
  std::size_t query_index = 0;
  bool ring_seen = false;
  for (const auto& s : split_sections(text)) {
    if (s.kind == "ring") {
      if (ring_seen) fail_at(s.line, 1, "duplicate [ring] section");
      ring_seen = true;
      parse_ring(s, job);
    } else if (s.kind == "ideal") {
      if (!job.ring) fail_at(s.line, 1, "[ideal] before [ring]");
      if (job.ideals.contains(s.name)) fail_at(s.line, 1, "duplicate ideal '" + s.name + "'");
      std::vector<Polynomial> gens;
      for (const auto& e : s.entries) {
        if (e.key == "gens") {
          for (const auto& [t, col] : split_list(e, ';')) gens.push_back(poly_at(job.ring, e, t, col));
        } else if (e.key == "gen") {
          gens.push_back(poly_at(job.ring, e, e.value, e.column));
        } else {
          fail_at(e.line, 1, "unknown key '" + e.key + "' in [ideal]");
        }
      }
      job.ideals.emplace(s.name, Ideal(job.ring, std::move(gens)));
    } else {
      job.queries.push_back(parse_query(s, job, ++query_index));
    }
  }
  return job;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

json witness_json(const Witness& w) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, OperatorWitness>) {
          return {{"type", "operator"},
                  {"operator", x.op_text},
                  {"value", x.value.to_string()},
                  {"value_mod_q", x.value_mod_q.to_string()}};
        } else if constexpr (std::is_same_v<T, MultiplierWitness>) {
          return {{"type", "multiplier"}, {"s", x.s.to_string()}};
        } else if constexpr (std::is_same_v<T, ContainmentWitness>) {
          json gens = json::array();
          for (const auto& g : x.quotient_generators) gens.push_back(g.to_string());
          return {{"type", "containment"}, {"quotient_generators", gens}};
        } else {
          return {{"type", "remainder"}, {"normal_form", x.normal_form.to_string()}};
        }
      },
      w);
}

std::string witness_text(const Witness& w) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, OperatorWitness>) {
          return "operator " + x.op_text + " gives " + x.value.to_string() + " = " + x.value_mod_q.to_string() +
                 " mod Q";
        } else if constexpr (std::is_same_v<T, MultiplierWitness>) {
          return "s = " + x.s.to_string() + " lies outside Q and s*f lies in Q^n";
        } else if constexpr (std::is_same_v<T, ContainmentWitness>) {
          std::string s = "(Q^n : f) lies in Q, generated by ";
          for (std::size_t i = 0; i < x.quotient_generators.size(); ++i)
            s += (i ? "; " : "") + x.quotient_generators[i].to_string();
          return s;
        } else {
          return "normal form mod Q^n is " + x.normal_form.to_string();
        }
      },
      w);
}

json verdict_json(std::size_t query, const PowerKind& kind, const Polynomial& f, const Verdict& v) {
  return {{"query", query},
          {"kind", kind.to_string()},
          {"f", f.to_string()},
          {"member", v.member},
          {"witness", witness_json(v.witness)},
          {"caveats", v.caveats}};
}

void verdict_text(std::ostream& out, const Verdict& v) {
  out << "  member: " << (v.member ? "yes" : "no") << "\n";
  if (const auto w = witness_text(v.witness); !w.empty()) out << "  witness: " << w << "\n";
  for (const auto& c : v.caveats) out << "  caveat: " << c << "\n";
}

const char* type_name(Query::Type t) {
  switch (t) {
  case Query::Type::Member: return "member";
  case Query::Type::Separate: return "separate";
  case Query::Type::Compare: return "compare";
  case Query::Type::Generators: return "generators";
  case Query::Type::VerifyPaper: return "verify-paper";
  }
  return "?";
}

struct QueryResult {
  std::string text;
  int code = 0;
};

int emit_reference_checks(std::uint64_t p, bool as_json, std::ostream& out, std::size_t query);

std::string cell_text(const CompareCell& c) {
  if (!c.verdict) return "error";
  return c.verdict->member ? "yes" : "no";
}

class Runner {
public:
  Runner(const JobSpec& job, const RunOptions& opts) : job_(job), opts_(opts) {
    for (const auto& [name, ideal] : job.ideals) {
      try {
        engines_.emplace(name, std::make_unique<PowerEngine>(ideal));
      } catch (const Error& e) {
        engine_errors_.emplace(name, e.what());
      }
    }
  }

  QueryResult run(const Query& q) const {
    std::ostringstream out;
    int code = 0;
    try {
      code = dispatch(q, out);
    } catch (const std::exception& e) {
      std::ostringstream err;
      if (opts_.json) {
        err << json{{"query", q.index}, {"type", type_name(q.type)}, {"error", e.what()}}.dump() << "\n";
      } else {
        err << "query " << q.index << " (" << type_name(q.type) << ", line " << q.line << "): error: " << e.what()
            << "\n";
      }
      return {err.str(), 1};
    }
    return {out.str(), code};
  }

private:
  const PowerEngine& engine(const Query& q) const {
    if (auto it = engine_errors_.find(q.ideal); it != engine_errors_.end())
      throw Error(ErrorCode::NonProperIdeal, "ideal '" + q.ideal + "': " + it->second);
    return *engines_.at(q.ideal);
  }

  int dispatch(const Query& q, std::ostream& out) const {
    switch (q.type) {
    case Query::Type::Member: return member(q, out);
    case Query::Type::Separate: return separate(q, out);
    case Query::Type::Compare: return compare(q, out);
    case Query::Type::Generators: return generators(q, out);
    case Query::Type::VerifyPaper: return emit_reference_checks(q.p.value_or(5), opts_.json, out, q.index);
    }
    return 0;
  }

  void header(const Query& q, std::ostream& out, const std::string& detail) const {
    out << "query " << q.index << ": " << type_name(q.type) << " " << detail << "\n";
  }

  int member(const Query& q, std::ostream& out) const {
    const auto& f = q.polys[0];
    const auto v = engine(q).member(q.kinds[0], f);
    if (opts_.json) {
      out << verdict_json(q.index, q.kinds[0], f, v).dump() << "\n";
    } else {
      header(q, out, q.kinds[0].to_string() + " of " + q.ideal + ", f = " + f.to_string());
      verdict_text(out, v);
    }
    return 0;
  }

  int separate(const Query& q, std::ostream& out) const {
    const auto& eng = engine(q);
    const auto& f = q.polys[0];
    const auto& kind = q.kinds[0];
    if (!q.replay) return member(q, out);
    auto w = eng.evaluate(*q.replay, f);
    const bool separates = !w.value_mod_q.is_zero();
    if (opts_.json) {
      Verdict v{false, w, {}};
      auto j = verdict_json(q.index, kind, f, v);
      j["member"] = separates ? json(false) : json(nullptr);
      j["replay"] = true;
      out << j.dump() << "\n";
    } else {
      header(q, out, kind.to_string() + " of " + q.ideal + ", f = " + f.to_string() + ", replaying " + w.op_text);
      out << "  value: " << w.value.to_string() << "\n";
      out << "  value mod Q: " << w.value_mod_q.to_string() << "\n";
      out << "  member: " << (separates ? "no" : "undecided by this operator") << "\n";
    }
    return 0;
  }

  int compare(const Query& q, std::ostream& out) const {
    const auto& eng = engine(q);
    auto corpus = q.polys;
    Rng rng(opts_.seed ^ (0x9E3779B97F4A7C15ULL * q.index));
    RandomShape shape;
    for (unsigned i = 0; i < q.random_count; ++i) corpus.push_back(random_polynomial(eng.ring(), rng, shape));
    const auto rep = compare_report(eng, q.kinds, corpus, opts_.threads);

    // Declared equality covers kinds of the same order.
    std::vector<std::size_t> mismatched_rows;
    if (q.expect_equal)
      for (const auto& d : rep.disagreements)
        if (mismatched_rows.empty() || mismatched_rows.back() != d.row) mismatched_rows.push_back(d.row);
    const bool expectation_failed = !mismatched_rows.empty();

    if (opts_.json) {
      json rows = json::array();
      for (std::size_t r = 0; r < corpus.size(); ++r) {
        json cells = json::array();
        for (std::size_t k = 0; k < q.kinds.size(); ++k) {
          const auto& c = rep.cells[r][k];
          if (c.verdict) {
            cells.push_back(verdict_json(q.index, q.kinds[k], corpus[r], *c.verdict));
          } else {
            cells.push_back({{"query", q.index},
                             {"kind", q.kinds[k].to_string()},
                             {"f", corpus[r].to_string()},
                             {"error", c.error}});
          }
        }
        rows.push_back({{"f", corpus[r].to_string()}, {"verdicts", cells}});
      }
      json dis = json::array();
      for (const auto& d : rep.disagreements)
        dis.push_back({{"row", d.row}, {"kind_a", q.kinds[d.kind_a].to_string()}, {"kind_b", q.kinds[d.kind_b].to_string()}});
      json j{{"query", q.index}, {"type", "compare"}, {"rows", rows}, {"disagreements", dis}, {"errors", rep.error_count}};
      if (q.expect_equal) j["expectation"] = {{"equal", !expectation_failed}, {"mismatched_rows", mismatched_rows}};
      out << j.dump() << "\n";
    } else {
      std::string kinds;
      for (const auto& k : q.kinds) kinds += (kinds.empty() ? "" : ", ") + k.to_string();
      header(q, out, kinds + " on " + q.ideal + ", " + std::to_string(corpus.size()) + " elements");
      std::size_t fw = 1;
      std::vector<std::string> texts;
      for (const auto& f : corpus) {
        texts.push_back(f.to_string());
        fw = std::max(fw, texts.back().size());
      }
      fw = std::min<std::size_t>(fw, 48);
      std::ostringstream table;
      table << std::left << "  " << std::setw(4) << "#" << std::setw(static_cast<int>(fw) + 2) << "f";
      std::vector<std::size_t> widths;
      for (const auto& k : q.kinds) {
        widths.push_back(std::max<std::size_t>(k.to_string().size(), 5) + 2);
        table << std::setw(static_cast<int>(widths.back())) << k.to_string();
      }
      table << "\n";
      for (std::size_t r = 0; r < corpus.size(); ++r) {
        auto ft = texts[r];
        if (ft.size() > fw) ft = ft.substr(0, fw - 3) + "...";
        table << "  " << std::setw(4) << (r + 1) << std::setw(static_cast<int>(fw) + 2) << ft;
        for (std::size_t k = 0; k < q.kinds.size(); ++k)
          table << std::setw(static_cast<int>(widths[k])) << cell_text(rep.cells[r][k]);
        table << "\n";
      }
      std::istringstream lines(table.str());
      for (std::string l; std::getline(lines, l);) out << l.substr(0, l.find_last_not_of(' ') + 1) << "\n";
      for (std::size_t r = 0; r < corpus.size(); ++r)
        for (std::size_t k = 0; k < q.kinds.size(); ++k)
          if (!rep.cells[r][k].verdict)
            out << "  error in row " << r + 1 << ", " << q.kinds[k].to_string() << ": " << rep.cells[r][k].error << "\n";
      out << "  disagreements: " << rep.disagreements.size() << "\n";
      for (const auto& d : rep.disagreements)
        out << "    row " << d.row + 1 << ": " << q.kinds[d.kind_a].to_string() << " vs "
            << q.kinds[d.kind_b].to_string() << "\n";
      if (q.expect_equal) {
        out << "  expectation (kinds of equal order agree): " << (expectation_failed ? "FAILED" : "holds") << "\n";
        for (auto r : mismatched_rows) out << "    mismatch in row " << r + 1 << "\n";
      }
    }
    if (rep.error_count > 0) return 1;
    return expectation_failed ? 2 : 0;
  }

  int generators(const Query& q, std::ostream& out) const {
    const auto& ideal = job_.ideals.at(q.ideal);
    const unsigned bound = q.degree_bound.value_or(opts_.degree_bound.value_or(4));
    const auto g = diff_power_generators(ideal, q.n, q.linearity, bound);
    const std::string kind = PowerKind::differential(q.n, q.linearity).to_string();
    if (opts_.json) {
      json gens = json::array();
      for (const auto& p : g.ideal.generators()) gens.push_back(p.to_string());
      out << json{{"query", q.index},      {"type", "generators"},      {"kind", kind},
                  {"degree_bound", bound}, {"truncated", g.truncated}, {"generators", gens}}
                 .dump()
          << "\n";
    } else {
      header(q, out, kind + " of " + q.ideal + ", degree <= " + std::to_string(bound));
      for (const auto& p : g.ideal.generators()) out << "  " << p.to_string() << "\n";
      out << "  (" << g.ideal.generators().size() << " elements; truncated at degree " << bound << ")\n";
    }
    return 0;
  }

  const JobSpec& job_;
  const RunOptions& opts_;
  std::map<std::string, std::unique_ptr<PowerEngine>> engines_;
  std::map<std::string, std::string> engine_errors_;
};

int emit_reference_checks(std::uint64_t p, bool as_json, std::ostream& out, std::size_t query) {
  const auto checks = reference_checks(p);
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.passed;
  if (as_json) {
    json arr = json::array();
    for (const auto& c : checks) arr.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    json j{{"type", "verify-paper"}, {"p", p}, {"checks", arr}, {"passed", ok}};
    if (query) j["query"] = query;
    out << j.dump() << "\n";
  } else {
    if (query) out << "query " << query << ": verify-paper p = " << p << "\n";
    for (const auto& c : checks)
      out << (query ? "  " : "") << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  return ok ? 0 : 2;
}

} // namespace

int run_reference_checks(std::uint64_t p, bool json, std::ostream& out) {
  return emit_reference_checks(p, json, out, 0);
}

int run_job(const JobSpec& job, const RunOptions& options, std::ostream& out) {
  const Runner runner(job, options);
  const auto& qs = job.queries;
  std::vector<std::promise<QueryResult>> promises(qs.size());
  std::vector<std::future<QueryResult>> futures;
  for (auto& p : promises) futures.push_back(p.get_future());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < qs.size(); i = next++) promises[i].set_value(runner.run(qs[i]));
  };
  const unsigned nthreads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(qs.size())));
  std::vector<std::jthread> pool;
  for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);

  int code = 0;
  for (auto& f : futures) {
    const auto r = f.get();
    out << r.text << std::flush;
    if (r.code == 1) code = 1;
    else if (r.code == 2 && code == 0) code = 2;
  }
  return code;
}

// ---------------------------------------------------------------------------
// Worked examples

namespace {

std::string yes_no(bool b) { return b ? "yes" : "no"; }

ReferenceCheck check(std::string name, bool passed, std::string detail) {
  return {std::move(name), passed, std::move(detail)};
}

const OperatorWitness* op_witness(const Verdict& v) { return std::get_if<OperatorWitness>(&v.witness); }

template <class F>
ReferenceCheck guarded(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return check(name, false, std::string("raised ") + e.what());
  }
}

} // namespace

std::vector<ReferenceCheck> reference_checks(std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not a prime");
  const auto pu = static_cast<unsigned>(p);
  std::vector<ReferenceCheck> out;

  // F_p(t)[x], Q = (x^p - t).
  {
    const auto ring = make_ring(DomainSpec::rational_functions(p), {"x"});
    const auto f = parse_polynomial(ring, "x^" + std::to_string(p) + " - t");
    const PowerEngine eng(Ideal(ring, {f}));
    const std::string where = "F_" + std::to_string(p) + "(t)[x], Q = (" + f.to_string() + ")";
    out.push_back(guarded("field example, base-linear operators", [&] {
      const auto v = eng.member(PowerKind::differential(2, Linearity::BaseLinear), f);
      return check("field example, base-linear operators", v.member,
                   where + ": f in differential(2, base): " + yes_no(v.member) + " (expected yes)");
    }));
    out.push_back(guarded("field example, Z-linear operators", [&] {
      const auto v = eng.member(PowerKind::differential(2, Linearity::ZLinear), f);
      const auto* w = op_witness(v);
      const bool ok = !v.member && w && w->op_text == "D_t^(1)" && w->value == Polynomial::constant(ring, -1);
      return check("field example, Z-linear operators", ok,
                   where + ": f in differential(2, zlinear): " + yes_no(v.member) +
                       (w ? ", witness " + w->op_text + " -> " + w->value.to_string() : "") +
                       " (expected no, D_t^(1) -> " + Polynomial::constant(ring, -1).to_string() + ")");
    }));
    out.push_back(guarded("field example, symbolic power", [&] {
      const auto v = eng.member(PowerKind::symbolic(2), f);
      return check("field example, symbolic power", !v.member,
                   where + ": f in symbolic(2): " + yes_no(v.member) + " (expected no)");
    }));
  }

  // Z_(p)[x], Q = (p).
  {
    const auto ring = make_ring(DomainSpec::local_integers(p), {"x"});
    const auto pp = Polynomial::constant(ring, static_cast<long>(p));
    const PowerEngine eng(Ideal(ring, {pp}));
    const std::string where = "Z_(" + std::to_string(p) + ")[x], Q = (" + pp.to_string() + ")";
    out.push_back(guarded("mixed example, differential powers", [&] {
      bool all = true;
      for (unsigned n : {2u, 3u}) all = all && eng.member(PowerKind::differential(n, Linearity::ZLinear), pp).member;
      return check("mixed example, differential powers", all,
                   where + ": " + pp.to_string() + " in differential(2) and differential(3): " + yes_no(all) + " (expected yes)");
    }));
    out.push_back(guarded("mixed example, mixed power", [&] {
      const auto v = eng.member(PowerKind::mixed(2), pp);
      const auto* w = op_witness(v);
      const auto expected = Polynomial::constant(ring, 1) - pp.pow(pu - 1);
      const bool ok = !v.member && w && w->op_text == "δ^1" && w->value == expected;
      return check("mixed example, mixed power", ok,
                   where + ": " + pp.to_string() + " in mixed(2): " + yes_no(v.member) +
                       (w ? ", witness " + w->op_text + " -> " + w->value.to_string() : "") + " (expected no, δ^1 -> " +
                       expected.to_string() + ")");
    }));
  }

  // Z[t]_(p)[x], Q = (p, x^p - t), phi(t) = x^(p^2) - (x^p - t)^p.
  {
    const auto ring = make_ring(DomainSpec::local_poly_fractions(p), {"x"});
    const auto ps = std::to_string(p);
    const auto f = parse_polynomial(ring, "x^" + ps + " - t");
    LiftSpec lift;
    lift.t_image = parse_polynomial(ring, "x^" + std::to_string(p * p) + " - (x^" + ps + " - t)^" + ps);
    lift.var_images.assign(1, std::nullopt);
    const auto pp = Polynomial::constant(ring, static_cast<long>(p));
    const PowerEngine eng(Ideal(ring, {pp, f}));
    const std::string where = "Z[t]_(" + ps + ")[x], Q = (" + ps + ", " + f.to_string() + ")";
    out.push_back(guarded("lifted example, delta", [&] {
      validate_lift(ring, lift);
      const auto d = poly_delta(f, lift);
      const bool ok = reduce(d, Ideal(ring, {pp})).is_zero();
      return check("lifted example, delta", ok, where + ": delta(f) = " + d.to_string() + " (expected a multiple of p)");
    }));
    out.push_back(guarded("lifted example, mixed without D_t", [&] {
      const auto v = eng.member(PowerKind::mixed(2, lift, Linearity::BaseLinear), f);
      return check("lifted example, mixed without D_t", v.member,
                   where + ": f in mixed(2, base): " + yes_no(v.member) + " (expected yes)");
    }));
    out.push_back(guarded("lifted example, mixed with D_t", [&] {
      const auto v = eng.member(PowerKind::mixed(2, lift, Linearity::ZLinear), f);
      const auto* w = op_witness(v);
      const bool ok = !v.member && w && w->op_text == "D_t^(1)";
      return check("lifted example, mixed with D_t", ok,
                   where + ": f in mixed(2): " + yes_no(v.member) +
                       (w ? ", witness " + w->op_text + " -> " + w->value.to_string() : "") +
                       " (expected no, D_t^(1))");
    }));
  }
  return out;
}

} // namespace symdiff
