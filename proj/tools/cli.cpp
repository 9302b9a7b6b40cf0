#include "cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include "tuplecraft/audit.hpp"
#include "tuplecraft/census.hpp"
#include "tuplecraft/core_arith.hpp"
#include "tuplecraft/errors.hpp"
#include "tuplecraft/forms.hpp"
#include "tuplecraft/romanoff.hpp"
#include "tuplecraft/sieve.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

namespace tuplecraft::cli {
namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  unsigned threads = 0;
  std::uint64_t seed = 0;
  bool json = false;
  std::string format = "text";
  std::string out_path;
};

// What a subcommand hands back for rendering. text overrides the generic
// key: value rendering; table names the member rendered as CSV rows.
struct Report {
  Json data = Json::object();
  std::string text;
  std::string table;
};

Json big_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

Json rational_json(const Rational& r) {
  return Json{{"num", big_json(numerator(r))}, {"den", big_json(denominator(r))}, {"value", to_double(r)}};
}

bool is_rational(const Json& j) { return j.is_object() && j.size() == 3 && j.contains("num") && j.contains("den"); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (is_rational(j)) {
    std::string s = j["num"].is_string() ? j["num"].get<std::string>() : j["num"].dump();
    const std::string d = j["den"].is_string() ? j["den"].get<std::string>() : j["den"].dump();
    if (d != "1") s += "/" + d;
    return s + " (" + j["value"].dump() + ")";
  }
  if (j.is_null()) return "none";
  return j.dump();
}

std::string inline_text(const Json& j) {
  if (j.is_array()) {
    std::string s;
    for (const auto& e : j) s += (s.empty() ? "" : " ") + inline_text(e);
    return s;
  }
  if (j.is_object() && !is_rational(j)) {
    std::string s;
    for (const auto& [k, v] : j.items()) s += (s.empty() ? "" : " ") + k + "=" + scalar_text(v);
    return s;
  }
  return scalar_text(j);
}

std::string render_text(const Json& data) {
  std::ostringstream os;
  for (const auto& [key, value] : data.items()) {
    if (value.is_array() && !value.empty() && value.front().is_object()) {
      os << key << ":\n";
      for (const auto& row : value) os << "  " << inline_text(row) << "\n";
    } else if (value.is_object() && !is_rational(value)) {
      std::string s;
      for (const auto& [k, v] : value.items()) s += (s.empty() ? "" : " ") + k + ":" + scalar_text(v);
      os << key << ": " << s << "\n";
    } else {
      os << key << ": " << inline_text(value) << "\n";
    }
  }
  return os.str();
}

std::string csv_cell(const Json& j) {
  if (is_rational(j)) {
    std::string s = scalar_text(j);
    return s.substr(0, s.find(' '));
  }
  std::string s = j.is_string() ? j.get<std::string>() : j.is_null() ? "" : j.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  return s;
}

std::string render_csv(const Report& r) {
  std::ostringstream os;
  const Json* table = (!r.table.empty() && r.data.contains(r.table)) ? &r.data[r.table] : nullptr;
  if (table && table->is_array() && !table->empty() && table->front().is_object()) {
    std::string header;
    for (const auto& [k, v] : table->front().items()) header += (header.empty() ? "" : ",") + k;
    os << header << "\n";
    for (const auto& row : *table) {
      std::string line;
      bool first = true;
      for (const auto& [k, v] : row.items()) {
        line += (first ? "" : ",") + csv_cell(v);
        first = false;
      }
      os << line << "\n";
    }
  } else if (table && table->is_object()) {
    os << "key,count\n";
    for (const auto& [k, v] : table->items()) os << k << "," << csv_cell(v) << "\n";
  } else {
    os << "key,value\n";
    for (const auto& [k, v] : r.data.items())
      if (!v.is_array() && (!v.is_object() || is_rational(v))) os << k << "," << csv_cell(v) << "\n";
  }
  return os.str();
}

// Integers are taken exactly; anything else is read as a real number.
std::variant<std::uint64_t, double> parse_count_arg(const std::string& s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && p == s.data() + s.size()) return v;
  double d = 0;
  auto [q, ec2] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (ec2 != std::errc() || q != s.data() + s.size() || !(d >= 0) || std::isinf(d))
    throw UsageError("--x: not a nonnegative number: " + s);
  return d;
}

std::vector<std::int64_t> parse_list(const std::string& csv, const char* flag) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || p != item.data() + item.size()) throw UsageError(std::string(flag) + ": bad list entry \"" + item + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

std::string fixed17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct TupleSource {
  std::string file;
  std::string offsets;

  void attach(CLI::App* sub) {
    auto* f = sub->add_option("--tuple-file", file, "Tuple file, one \"a b\" pair per line");
    auto* o = sub->add_option("--offsets", offsets, "Comma-separated offsets o_j for the tuple {n + o_j}");
    f->excludes(o);
  }

  TupleSet load() const {
    if (!file.empty()) return read_tuple_file(file);
    if (!offsets.empty()) {
      const auto o = parse_offsets(offsets);
      return TupleSet::from_offsets(o);
    }
    throw UsageError("one of --tuple-file or --offsets is required");
  }
};

Json forms_json(const TupleSet& t) {
  Json forms = Json::array();
  for (const auto& f : t) forms.push_back(f.to_string());
  return forms;
}

Json histogram_json(const std::vector<std::uint64_t>& h) {
  Json j = Json::object();
  for (std::size_t i = 0; i < h.size(); ++i) j[std::to_string(i)] = h[i];
  return j;
}

Json census_json(const CensusResult& r, double C) {
  Json j;
  j["x"] = r.x;
  j["span"] = r.span;
  j["k"] = r.k;
  j["m"] = r.m;
  j["window"] = Json::array({r.begin, r.end});
  j["count"] = r.count;
  const double bound = r.x > 1 ? theorem_bound(static_cast<double>(r.x), r.k, C) : 0.0;
  j["C"] = C;
  j["bound"] = bound;
  j["ratio"] = bound > 0 ? static_cast<double>(r.count) / bound : 0.0;
  j["coincidences"] = r.coincidences;
  j["histogram"] = histogram_json(r.histogram);
  return j;
}

void emit_warnings(const std::vector<std::string>& warnings, Report& r, std::ostream& err) {
  if (warnings.empty()) return;
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  r.data["warnings"] = warnings;
}

// --- subcommands -----------------------------------------------------------

void run_sieve(std::uint64_t lo, std::uint64_t hi, const Globals& g, std::ostream& out) {
  if (lo >= hi) throw DomainError("sieve needs lo < hi");
  const std::uint64_t step = std::uint64_t{1} << 24;
  const bool json = g.format == "json";
  if (json) out << "{\"lo\":" << lo << ",\"hi\":" << hi << ",\"primes\":[";
  else if (g.format == "csv") out << "p\n";
  bool first = true;
  for (std::uint64_t a = lo; a < hi;) {
    const std::uint64_t b = hi - a > step ? a + step : hi;
    const auto table = sieve_window(a, b, g.threads);
    table.for_each_prime([&](std::uint64_t p) {
      if (json) {
        out << (first ? "" : ",") << p;
        first = false;
      } else {
        out << p << "\n";
      }
    });
    a = b;
  }
  if (json) out << "]}\n";
}

Report run_pi(const std::string& x_text, std::optional<std::uint64_t> q, std::int64_t a, const Globals& g) {
  const auto x = parse_count_arg(x_text);
  Report r;
  r.data["x"] = std::visit([](auto v) { return Json(v); }, x);
  std::uint64_t count = 0;
  if (q) {
    count = std::visit([&](auto v) { return prime_count_ap(v, *q, a, g.threads); }, x);
    r.data["q"] = *q;
    r.data["a"] = a;
  } else {
    count = std::visit([&](auto v) { return prime_count(v, g.threads); }, x);
  }
  r.data["pi"] = count;
  r.text = (q ? "pi(" + x_text + "; " + std::to_string(*q) + ", " + std::to_string(a) + ") = " : "pi(" + x_text + ") = ") +
           std::to_string(count) + "\n";
  return r;
}

Report run_li(double x) {
  Report r;
  const double v = log_integral(x);
  r.data["x"] = x;
  r.data["li"] = v;
  r.text = "li(" + fixed17(x) + ") = " + fixed17(v) + "\n";
  return r;
}

Report run_admissible(const TupleSet& t, std::optional<std::uint64_t> series_cutoff) {
  Report r;
  const auto adm = is_admissible(t);
  r.data["k"] = t.size();
  r.data["forms"] = forms_json(t);
  r.data["admissible"] = adm.admissible;
  r.data["witness"] = adm.witness ? Json(*adm.witness) : Json(nullptr);
  r.data["offending_form"] = adm.offending_form ? Json(t[*adm.offending_form].to_string()) : Json(nullptr);
  std::ostringstream text;
  text << "admissible: ";
  if (adm.admissible) {
    text << "true";
  } else {
    text << "false (witness p=" << *adm.witness;
    if (adm.offending_form) text << ", form " << t[*adm.offending_form].to_string() << " has gcd(a, b) > 1";
    text << ")";
  }
  text << "\n";
  if (series_cutoff) {
    const double s = singular_series(t, *series_cutoff);
    r.data["singular_series"] = Json{{"cutoff", *series_cutoff}, {"value", s}};
    text << "singular series (p <= " << *series_cutoff << "): " << fixed17(s) << "\n";
  }
  r.text = text.str();
  return r;
}

Report run_subset(const TupleSet& t, bool shuffle, std::uint64_t seed) {
  Report r;
  const auto idx = admissible_subset(t, shuffle ? ScanOrder::seeded_random : ScanOrder::given, seed);
  std::vector<std::size_t> one_based;
  for (auto i : idx) one_based.push_back(i + 1);
  r.data["k"] = t.size();
  r.data["order"] = shuffle ? "random" : "given";
  if (shuffle) r.data["seed"] = seed;
  r.data["indices"] = one_based;
  r.data["size"] = idx.size();
  r.data["forms"] = forms_json(t.subset(idx));
  std::ostringstream text;
  text << "indices:";
  for (auto i : one_based) text << " " << i;
  text << "\nsize: " << idx.size() << " of " << t.size() << "\n";
  r.text = text.str();
  return r;
}

Json report_json(const DiscrepancyReport& rep, const std::string& kind) {
  Json j;
  j["kind"] = kind;
  j["sum"] = rep.exact_total ? rational_json(*rep.exact_total) : Json(rep.total);
  Json terms = Json::array();
  for (const auto& t : rep.terms) {
    Json row;
    row["q"] = t.q;
    row["worst_a"] = t.worst_a;
    row["value"] = t.exact ? rational_json(*t.exact) : Json(t.value);
    if (t.worst_u) row["worst_u"] = *t.worst_u;
    terms.push_back(row);
  }
  j["terms"] = terms;
  Json comp = Json::object();
  if (rep.comparators.count_A) comp["count_A"] = *rep.comparators.count_A;
  if (rep.comparators.count_P) comp["count_P"] = *rep.comparators.count_P;
  comp["k"] = rep.comparators.k;
  if (rep.comparators.log10_rhs) comp["log10_rhs"] = *rep.comparators.log10_rhs;
  j["comparator"] = comp;
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  return j;
}

struct AuditArgs {
  std::int64_t x = 0;
  double theta = 1.0 / 3.0;
  std::optional<std::uint64_t> B;
  std::optional<std::uint64_t> Q;
  std::optional<std::uint64_t> rmax;
  double epsilon = 0.1;
  std::optional<std::uint64_t> U;
  std::string scan = "integer";
  std::optional<std::uint64_t> k;
  std::string set_file;
  bool dedup = false;
  TupleSource tuple;
};

WindowSet audit_window(const AuditArgs& a, std::ostream& err) {
  if (a.set_file.empty()) return WindowSet::naturals(a.x);
  std::vector<std::string> warnings;
  auto members = read_set_file(a.set_file, a.dedup ? DuplicatePolicy::dedup : DuplicatePolicy::reject, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return WindowSet::from_members(std::move(members), a.x);
}

std::uint64_t audit_B(const AuditArgs& a) {
  if (a.B) {
    if (!is_prime(*a.B)) throw DomainError("B must be prime, got " + std::to_string(*a.B));
    return *a.B;
  }
  return choose_B(static_cast<double>(a.x)).B;
}

std::uint64_t audit_Q(const AuditArgs& a) {
  if (a.Q) {
    if (*a.Q < 1) throw DomainError("Q must be >= 1");
    return *a.Q;
  }
  return make_audit_config(a.x, a.theta, 2, 1).Q;
}

Json window_json(const WindowSet& w) {
  return Json{{"source", w.is_naturals() ? "naturals" : "set"}, {"x", w.x()}, {"count_A", w.count()}};
}

Report run_audit(const std::string& which, const AuditArgs& a, const Globals& g, std::ostream& err) {
  Report r;
  r.table = "terms";
  if (which == "choose-b") {
    const auto c = choose_B(static_cast<double>(a.x));
    r.data["x"] = a.x;
    r.data["threshold"] = c.threshold;
    r.data["B"] = c.B;
    r.data["exceptional_branch_evaluated"] = c.exceptional_branch_evaluated;
    return r;
  }
  if (which == "bv") {
    BvConfig cfg;
    cfg.x = a.x;
    cfg.B = audit_B(a);
    cfg.rmax = a.rmax ? *a.rmax : std::max<std::uint64_t>(1, floor_power(a.x, 0.5 - a.epsilon));
    cfg.U = a.U ? *a.U : static_cast<std::uint64_t>(a.x);
    cfg.scan = a.scan == "real" ? UScan::real : UScan::integer;
    cfg.threads = g.threads;
    r.data = report_json(bv_discrepancy(cfg), "bv");
    r.data["x"] = a.x;
    r.data["B"] = cfg.B;
    r.data["rmax"] = cfg.rmax;
    r.data["U"] = cfg.U;
    r.data["scan"] = a.scan;
    return r;
  }
  const auto window = audit_window(a, err);
  if (which == "hyp1") {
    const auto Q = audit_Q(a);
    r.data = report_json(hyp1_sum(window, Q, a.k.value_or(1), g.threads), "hyp1");
    r.data["window"] = window_json(window);
    r.data["Q"] = Q;
  } else if (which == "hyp2") {
    const auto t = a.tuple.load();
    if (t.size() != 1) throw UsageError("hyp2 takes exactly one linear form, got " + std::to_string(t.size()));
    const auto Q = audit_Q(a);
    const auto B = audit_B(a);
    r.data = report_json(hyp2_sum(window, t[0], B, Q, a.k.value_or(1), g.threads), "hyp2");
    r.data["window"] = window_json(window);
    r.data["form"] = t[0].to_string();
    r.data["B"] = B;
    r.data["Q"] = Q;
  } else if (which == "hyp3") {
    const auto Q = audit_Q(a);
    r.data = report_json(hyp3_report(window, Q, g.threads), "hyp3");
    r.data["window"] = window_json(window);
    r.data["Q"] = Q;
  } else if (which == "delta") {
    const auto t = a.tuple.load();
    const auto B = audit_B(a);
    const auto d = delta_statistic(window, t, B);
    r.table.clear();
    r.data["kind"] = "delta";
    r.data["window"] = window_json(window);
    r.data["forms"] = forms_json(t);
    r.data["B"] = B;
    r.data["delta"] = d.value;
    r.data["exact_factor"] = rational_json(d.exact_factor);
    r.data["ln_x"] = d.ln_x;
    r.data["k"] = d.k;
    r.data["count_P"] = d.count_P;
    r.data["exceeds_one_eighth"] = d.exceeds_one_eighth;
    r.data["inverse_ln_k"] = d.inverse_ln_k ? Json(*d.inverse_ln_k) : Json(nullptr);
    r.data["exceeds_inverse_ln_k"] = d.exceeds_inverse_ln_k ? Json(*d.exceeds_inverse_ln_k) : Json(nullptr);
  }
  return r;
}

struct RomanoffArgs {
  std::optional<std::int64_t> base;
  std::optional<std::int64_t> doubly_exp;
  std::string set_file;
  bool dedup = false;
  std::int64_t x = 0;
  std::optional<std::size_t> k;
  std::optional<std::uint64_t> threshold;
  double C = 1.0;
  std::string checkpoints;
};

std::vector<std::int64_t> romanoff_set(const RomanoffArgs& a, std::int64_t cap, std::ostream& err) {
  std::vector<std::string> warnings;
  std::vector<std::int64_t> set;
  if (a.base) set = build_set(PowersOf{*a.base}, cap);
  else if (a.doubly_exp) set = build_set(DoublyExponential{*a.doubly_exp}, cap);
  else if (!a.set_file.empty())
    set = build_set(SetFile{a.set_file, a.dedup ? DuplicatePolicy::dedup : DuplicatePolicy::reject}, cap, &warnings);
  else throw UsageError("one of --base, --doubly-exp or --set-file is required");
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return set;
}

Report run_romanoff(const std::string& which, const RomanoffArgs& a, const Globals& g, std::ostream& err) {
  Report r;
  if (which == "profile") {
    const auto set = romanoff_set(a, std::max<std::int64_t>(a.x, 2), err);
    const auto p = profile(set, a.x, g.threads);
    r.table = "histogram";
    r.data["x"] = p.x;
    r.data["sum_f"] = p.sum_f;
    r.data["sum_f2"] = p.sum_f2;
    r.data["represented"] = p.represented;
    r.data["cs_bound"] = rational_json(p.cs_bound);
    r.data["cauchy_schwarz_holds"] = p.cauchy_schwarz_holds();
    r.data["max_f"] = p.max_f();
    Json h = Json::object();
    for (auto [v, c] : p.histogram) h[std::to_string(v)] = c;
    r.data["histogram"] = h;
  } else if (which == "probe") {
    std::vector<std::int64_t> cps;
    if (!a.checkpoints.empty()) {
      cps = parse_list(a.checkpoints, "--checkpoints");
    } else {
      for (std::int64_t c = 10; c <= a.x; c *= 10) {
        cps.push_back(c);
        if (c > std::numeric_limits<std::int64_t>::max() / 10) break;
      }
      if (cps.empty() || cps.back() != a.x) cps.push_back(a.x);
    }
    const auto set = romanoff_set(a, std::max<std::int64_t>(cps.back(), 2), err);
    Json rows = Json::array();
    for (auto [x, f] : erdos_probe(set, cps)) rows.push_back(Json{{"x", x}, {"max_f", f}});
    r.table = "checkpoints";
    r.data["checkpoints"] = rows;
  } else {
    const auto set = romanoff_set(a, std::max<std::int64_t>(a.x, 2), err);
    const std::size_t usable = static_cast<std::size_t>(
        std::count_if(set.begin(), set.end(), [&](std::int64_t v) { return v >= 1 && v <= a.x; }));
    const std::size_t k = a.k.value_or(usable);
    const std::uint64_t m = a.threshold.value_or(theorem_threshold(k, a.C));
    const auto res = corollary1_experiment(set, k, a.x, m, g.threads);
    r.table = "histogram";
    r.data = census_json(res, a.C);
    std::vector<std::int64_t> in_range;
    for (auto v : set)
      if (v >= 1 && v <= a.x) in_range.push_back(v);
    r.data["members"] = std::vector<std::int64_t>(in_range.end() - static_cast<std::ptrdiff_t>(k), in_range.end());
  }
  return r;
}

void write_report(const Report& r, const Globals& g, std::ostream& out) {
  if (g.format == "json") out << r.data.dump() << "\n";
  else if (g.format == "csv") out << render_csv(r);
  else out << (r.text.empty() ? render_text(r.data) : r.text);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prime tuples, admissibility, censuses and discrepancy audits", "tuplecraft"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--threads", g.threads, "Worker threads, 0 for all cores")->envname("TUPLECRAFT_THREADS");
  auto* seed_opt = app.add_option("--seed", g.seed, "Seed for randomized scan orders")->envname("TUPLECRAFT_SEED");
  app.add_flag("--json", g.json, "Shorthand for --format json");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", g.out_path, "Write the report to this file");

  std::uint64_t lo = 0, hi = 0;
  auto* sieve = app.add_subcommand("sieve", "List primes in [lo, hi), one per line");
  sieve->add_option("--lo", lo, "Window start (inclusive)")->required();
  sieve->add_option("--hi", hi, "Window end (exclusive)")->required();

  std::string pi_x;
  std::optional<std::uint64_t> pi_q;
  std::int64_t pi_a = 0;
  auto* pi = app.add_subcommand("pi", "Count primes up to x, optionally in a residue class");
  pi->add_option("--x", pi_x, "Upper limit (real values are floored)")->required();
  auto* q_opt = pi->add_option("--q", pi_q, "Modulus");
  pi->add_option("--a", pi_a, "Residue")->needs(q_opt);

  double li_x = 0;
  auto* li = app.add_subcommand("li", "Logarithmic integral from 2 to x");
  li->add_option("--x", li_x, "Upper limit, x >= 2")->required();

  TupleSource adm_tuple;
  std::optional<std::uint64_t> series_cutoff;
  auto* adm = app.add_subcommand("admissible", "Test a tuple of linear forms for admissibility");
  adm_tuple.attach(adm);
  adm->add_option("--series", series_cutoff, "Also print the singular series truncated at this prime bound");

  TupleSource sub_tuple;
  std::string order;
  auto* sub = app.add_subcommand("subset", "Greedy admissible subset (indices are 1-based)");
  sub_tuple.attach(sub);
  sub->add_option("--order", order, "Scan order; random when a seed is set")->check(CLI::IsMember({"given", "random"}));

  TupleSource cen_tuple;
  std::int64_t cen_x = 0;
  int cen_span = 2;
  std::optional<std::uint64_t> cen_m;
  double cen_C = 1.0;
  std::optional<double> cen_c0;
  bool closed_end = false;
  auto* cen = app.add_subcommand("census", "Count n in [x, span x) with many prime values among the forms");
  cen_tuple.attach(cen);
  cen->add_option("--x", cen_x, "Window base")->required();
  cen->add_option("--span", cen_span, "Window span")->check(CLI::IsMember({2, 3}));
  cen->add_option("--threshold", cen_m, "Threshold m (default ceil(ln k / C))");
  cen->add_option("--C", cen_C, "Constant C in the reported bound")->check(CLI::PositiveNumber);
  cen->add_option("--c0", cen_c0, "Warn about coefficients beyond exp(c0 sqrt(ln x))");
  cen->add_flag("--closed-end", closed_end, "Scan x <= n <= span x - 2 instead of x <= n < span x");

  AuditArgs aud_args;
  auto* aud = app.add_subcommand("audit", "Discrepancy sums and statistics");
  aud->require_subcommand(1);
  aud->add_option("--x", aud_args.x, "Window base x")->required();
  aud->add_option("--theta", aud_args.theta, "Level exponent, Q = floor(x^theta)");
  aud->add_option("--B", aud_args.B, "Excluded prime (default: smallest prime above 0.9 ln ln x)");
  aud->add_option("--Q", aud_args.Q, "Largest modulus");
  aud->add_option("--rmax", aud_args.rmax, "bv: largest modulus (default floor(x^(1/2 - epsilon)))");
  aud->add_option("--epsilon", aud_args.epsilon, "bv: exponent margin for the default rmax");
  aud->add_option("--U", aud_args.U, "bv: largest u (default x)");
  aud->add_option("--scan", aud_args.scan, "bv: u over integers or reals")->check(CLI::IsMember({"integer", "real"}));
  aud->add_option("--k", aud_args.k, "Tuple size used for the comparator exponent");
  aud->add_option("--set-file", aud_args.set_file, "Source set A, one positive integer per line (default: naturals)");
  aud->add_flag("--dedup", aud_args.dedup, "Drop duplicate set members with a warning");
  aud_args.tuple.attach(aud);
  for (const char* name : {"hyp1", "hyp2", "hyp3", "bv", "delta", "choose-b"}) aud->add_subcommand(name);

  double cb_x = 0;
  auto* cb = app.add_subcommand("choose-b", "Smallest prime above 0.9 ln ln x");
  cb->add_option("--x", cb_x, "x > e")->required();

  RomanoffArgs rom_args;
  auto* rom = app.add_subcommand("romanoff", "Representation function f(n) = #{a in A : n - a prime}");
  rom->require_subcommand(1);
  auto* base_opt = rom->add_option("--base", rom_args.base, "A = powers of this base");
  auto* dexp_opt = rom->add_option("--doubly-exp", rom_args.doubly_exp, "A = base^(2^n)");
  auto* file_opt = rom->add_option("--set-file", rom_args.set_file, "A from a file, one positive integer per line");
  base_opt->excludes(dexp_opt)->excludes(file_opt);
  dexp_opt->excludes(file_opt);
  rom->add_flag("--dedup", rom_args.dedup, "Drop duplicate set members with a warning");
  rom->add_option("--x", rom_args.x, "Range bound")->required();
  rom->add_option("--k", rom_args.k, "cor1: number of largest members used");
  rom->add_option("--threshold", rom_args.threshold, "cor1: threshold m");
  rom->add_option("--C", rom_args.C, "cor1: constant C")->check(CLI::PositiveNumber);
  rom->add_option("--checkpoints", rom_args.checkpoints, "probe: comma-separated increasing checkpoints");
  for (const char* name : {"profile", "probe", "cor1"}) rom->add_subcommand(name);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  if (g.json) g.format = "json";

  std::ofstream file;
  if (!g.out_path.empty()) {
    file.open(g.out_path);
    if (!file) {
      err << "error: cannot open " << g.out_path << " for writing\n";
      return 1;
    }
  }
  std::ostream& sink = g.out_path.empty() ? out : file;

  try {
    Report r;
    if (*sieve) {
      run_sieve(lo, hi, g, sink);
      return 0;
    } else if (*pi) {
      r = run_pi(pi_x, pi_q, pi_a, g);
    } else if (*li) {
      r = run_li(li_x);
    } else if (*adm) {
      r = run_admissible(adm_tuple.load(), series_cutoff);
    } else if (*sub) {
      const bool seeded = !seed_opt->empty();
      const bool shuffle = order.empty() ? seeded : order == "random";
      r = run_subset(sub_tuple.load(), shuffle, g.seed);
    } else if (*cen) {
      const auto t = cen_tuple.load();
      const std::uint64_t m = cen_m.value_or(theorem_threshold(t.size(), cen_C));
      const auto res = tuple_census(t, cen_x, cen_span, m, {g.threads, closed_end});
      r.table = "histogram";
      r.data = census_json(res, cen_C);
      r.data["forms"] = forms_json(t);
      if (cen_c0) emit_warnings(coefficient_warnings(t, static_cast<double>(cen_x), *cen_c0), r, err);
    } else if (*aud) {
      r = run_audit(aud->get_subcommands().front()->get_name(), aud_args, g, err);
    } else if (*cb) {
      const auto c = choose_B(cb_x);
      r.data["x"] = cb_x;
      r.data["threshold"] = c.threshold;
      r.data["B"] = c.B;
      r.data["exceptional_branch_evaluated"] = c.exceptional_branch_evaluated;
    } else if (*rom) {
      r = run_romanoff(rom->get_subcommands().front()->get_name(), rom_args, g, err);
    }
    write_report(r, g, sink);
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tuplecraft::cli
