// ecic: command-line front end for error-correcting index codes.
//
// Exit codes: 0 success / PASS, 1 verified FAIL, 2 input error, 3 budget exhausted.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ecic/ecic.hpp"

namespace {

using ecic::Elem;
using ecic::Error;
using ecic::ErrorKind;
using nlohmann::json;

enum Exit { kOk = 0, kFail = 1, kInput = 2, kBudget = 3 };

struct RunConfig {
  std::string instance = "pentagon";
  std::string matrix;
  unsigned q = 0;  // 0: take it from the matrix file, else 2
  std::size_t delta = 0;
  std::uint64_t seed = 1;
  std::uint64_t node_budget = ecic::kDefaultNodeBudget;
  std::uint64_t enum_budget = ecic::kDefaultEnumerationBudget;
  unsigned jobs = 1;
  std::string format = "json";

  // subcommand specific
  std::string strategy = "concat";
  std::size_t length = 0;
  std::size_t trials = 1000;
  std::string error;
  std::string message;
  std::size_t random_errors = 0;

  ecic::Limits limits() const {
    ecic::Limits lim;
    lim.nodes = node_budget;
    lim.enumeration = enum_budget;
    lim.jobs = jobs;
    return lim;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MalformedDocument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ecic::Instance load_instance(const std::string& name) {
  if (std::filesystem::exists(name)) return ecic::parse_instance(read_file(name));
  if (auto b = ecic::builtin_instance(name)) return *b;
  throw Error(ErrorKind::MalformedDocument, "unknown instance \"" + name + "\" (not a file or built-in name)");
}

struct Loaded {
  ecic::Instance inst;
  ecic::Field F;
  std::optional<ecic::Matrix> matrix;
};

Loaded load(const RunConfig& cfg, bool need_matrix) {
  Loaded out{load_instance(cfg.instance), {}, std::nullopt};
  unsigned q = cfg.q;
  if (!cfg.matrix.empty()) {
    if (cfg.matrix == "example1") {
      out.matrix = ecic::example1_matrix();
    } else if (cfg.matrix == "pentagon") {
      out.matrix = ecic::pentagon_matrix();
    } else if (cfg.matrix == "identity") {
      out.matrix = ecic::Matrix::identity(out.inst.messages());
    } else {
      auto doc = ecic::parse_matrix(read_file(cfg.matrix));
      if (q != 0 && q != doc.q)
        throw Error(ErrorKind::MalformedDocument, "--q disagrees with the matrix file header");
      q = doc.q;
      out.matrix = std::move(doc.matrix);
    }
  } else if (need_matrix) {
    throw Error(ErrorKind::MalformedDocument, "--matrix is required");
  }
  out.F = ecic::make_field(q == 0 ? 2 : q);
  return out;
}

std::vector<std::size_t> one_based(const std::vector<std::size_t>& v) {
  std::vector<std::size_t> out;
  for (auto x : v) out.push_back(x + 1);
  return out;
}

json matrix_rows(const ecic::Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row_vector(r));
  return rows;
}

Elem parse_elem(long long v, const ecic::Field& F) {
  if (v < 0 || !F.contains(static_cast<unsigned>(v)))
    throw Error(ErrorKind::MalformedDocument, "value " + std::to_string(v) + " outside the field");
  return static_cast<Elem>(v);
}

ecic::Vector parse_vector(const std::string& text, std::size_t len, const ecic::Field& F) {
  ecic::Vector v;
  // A compact digit string such as "0100" is accepted for q <= 10.
  if (len > 1 && text.size() == len && F.order() <= 10 &&
      text.find_first_not_of("0123456789") == std::string::npos) {
    for (char c : text) v.push_back(parse_elem(c - '0', F));
    return v;
  }
  std::string s = text;
  for (char& c : s)
    if (c == ',') c = ' ';
  std::istringstream in(s);
  long long x;
  while (in >> x) v.push_back(parse_elem(x, F));
  if (!in.eof()) throw Error(ErrorKind::MalformedDocument, "cannot parse vector \"" + text + "\"");
  if (v.size() != len)
    throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(len) + " entries, got " + std::to_string(v.size()));
  return v;
}

// Caps on field order and message count reject the input; search and
// enumeration budgets are exhaustion.
int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::BudgetExceeded:
    case ErrorKind::Unknown:
    case ErrorKind::WeightCapExceeded:
      return kBudget;
    default:
      return kInput;
  }
}

std::string opt_str(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : "unknown"; }
json opt_json(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

void emit(const RunConfig& cfg, const json& doc, const std::string& text) {
  if (cfg.format == "text")
    std::cout << text;
  else
    std::cout << doc.dump(2) << '\n';
}

// ---------------------------------------------------------------------------

int run_validate(const RunConfig& cfg) {
  const auto L = load(cfg, false);
  json receivers = json::array();
  std::ostringstream text;
  text << "instance valid: m = " << L.inst.receivers() << ", n = " << L.inst.messages() << '\n';
  for (std::size_t i = 0; i < L.inst.receivers(); ++i) {
    const auto fr = ecic::receiver_frame(L.inst, i);
    receivers.push_back({{"receiver", i + 1},
                         {"demand", fr.demand + 1},
                         {"side_info", one_based(fr.side_info.items())},
                         {"complement", one_based(fr.complement.items())}});
    text << "  R" << i + 1 << ": f = " << fr.demand + 1 << ", |X| = " << fr.side_info.size()
         << ", |Y| = " << fr.complement.size() << '\n';
  }
  json doc{{"valid", true}, {"instance", ecic::instance_to_json(L.inst)}, {"receivers", receivers}};
  if (L.matrix) {
    ecic::LinearIndexCode code(L.inst, L.F, *L.matrix);
    doc["matrix"] = {{"q", L.F.order()}, {"rows", code.matrix().rows()}, {"cols", code.length()}};
    text << "matrix valid: " << code.matrix().rows() << " x " << code.length() << " over GF(" << L.F.order() << ")\n";
  }
  emit(cfg, doc, text.str());
  return kOk;
}

int run_params(const RunConfig& cfg) {
  const auto L = load(cfg, false);
  const auto lim = cfg.limits();
  const auto p = ecic::instance_params(L.inst, L.F, lim.alpha_cap, lim.min_rank_exponent);
  json doc{{"q", L.F.order()},
           {"alpha", p.alpha.alpha},
           {"alpha_witness", one_based(p.alpha.witness)},
           {"kappa", p.kappa.kappa},
           {"kappa_witness", matrix_rows(p.kappa.witness)}};
  std::ostringstream text;
  text << "alpha(H) = " << p.alpha.alpha << "  witness {";
  for (std::size_t k = 0; k < p.alpha.witness.size(); ++k) text << (k ? "," : "") << p.alpha.witness[k] + 1;
  text << "}\nkappa_" << L.F.order() << "(H) = " << p.kappa.kappa << "  witness rows:\n"
       << ecic::format_matrix(L.F.order(), p.kappa.witness);
  emit(cfg, doc, text.str());
  return kOk;
}

int run_bounds(const RunConfig& cfg) {
  const auto L = load(cfg, false);
  const auto r = ecic::bounds_report(L.inst, L.F, cfg.delta, cfg.limits());
  json doc{{"q", r.q},
           {"delta", r.delta},
           {"alpha", opt_json(r.alpha)},
           {"kappa", opt_json(r.kappa)},
           {"alpha_bound", opt_json(r.alpha_bound)},
           {"kappa_bound", opt_json(r.kappa_bound)},
           {"singleton", opt_json(r.singleton)},
           {"random_coding", r.random_coding},
           {"mds_equality", r.mds_equality ? json(*r.mds_equality) : json(nullptr)},
           {"lower", opt_json(r.lower)},
           {"upper", opt_json(r.upper)}};
  std::ostringstream text;
  auto line = [&](const std::string& k, const std::string& v) { text << std::left << std::setw(16) << k << v << '\n'; };
  line("q", std::to_string(r.q));
  line("delta", std::to_string(r.delta));
  line("alpha", opt_str(r.alpha));
  line("kappa", opt_str(r.kappa));
  line("alpha_bound", opt_str(r.alpha_bound));
  line("kappa_bound", opt_str(r.kappa_bound));
  line("singleton", opt_str(r.singleton));
  line("random_coding", std::to_string(r.random_coding));
  line("mds_equality", r.mds_equality ? (*r.mds_equality ? "true" : "false") : "unknown");
  line("lower", opt_str(r.lower));
  line("upper", opt_str(r.upper));
  emit(cfg, doc, text.str());
  return r.lower && r.upper ? kOk : kBudget;
}

int run_verify(const RunConfig& cfg) {
  const auto L = load(cfg, true);
  const ecic::LinearIndexCode code(L.inst, L.F, *L.matrix);
  const auto v = ecic::verify_ecic(code, cfg.delta, cfg.enum_budget);
  const auto radius = ecic::correction_radius(code, cfg.enum_budget);
  json doc{{"delta", cfg.delta}, {"required", v.required}, {"valid", v.valid}, {"margins", v.margins},
           {"radius", radius ? json(*radius) : json(nullptr)}};
  std::ostringstream text;
  text << (v.valid ? "PASS" : "FAIL") << ": (" << cfg.delta << ",H)-ECIC over GF(" << L.F.order() << "), N = "
       << code.length() << "\nmargins:";
  for (auto m : v.margins) text << ' ' << m;
  text << "\nradius: " << (radius ? std::to_string(*radius) : "not an index code") << '\n';
  if (ecic::rank(L.F, code.matrix()) > 0) {
    try {
      const auto d = ecic::code_min_distance(L.F, code.matrix(), cfg.enum_budget);
      doc["code_min_distance"] = d;
      text << "row-space minimum distance: " << d << '\n';
    } catch (const Error& e) {
      if (!e.is_budget()) throw;
      doc["code_min_distance"] = nullptr;
    }
  }
  if (!v.valid) {
    const auto zL = ecic::vec_mat(L.F, *v.certificate, code.matrix());
    doc["certificate"] = {{"receiver", *v.receiver + 1}, {"z", *v.certificate}, {"weight", ecic::hamming_weight(zL)}};
    text << "certificate: receiver " << *v.receiver + 1 << ", z =";
    for (auto x : *v.certificate) text << ' ' << x;
    text << ", wt(zL) = " << ecic::hamming_weight(zL) << " < " << v.required << '\n';
  }
  emit(cfg, doc, text.str());
  return v.valid ? kOk : kFail;
}

int run_radius(const RunConfig& cfg) {
  const auto L = load(cfg, true);
  const ecic::LinearIndexCode code(L.inst, L.F, *L.matrix);
  const auto radius = ecic::correction_radius(code, cfg.enum_budget);
  json doc{{"radius", radius ? json(*radius) : json(nullptr)}, {"index_code", radius.has_value()}};
  emit(cfg, doc, radius ? "radius: " + std::to_string(*radius) + "\n" : std::string("not an index code\n"));
  return radius ? kOk : kFail;
}

std::string status_name(ecic::SearchStatus s) {
  switch (s) {
    case ecic::SearchStatus::Feasible: return "feasible";
    case ecic::SearchStatus::Infeasible: return "infeasible";
    case ecic::SearchStatus::Unknown: return "unknown";
  }
  return "?";
}

int run_search(const RunConfig& cfg) {
  const auto L = load(cfg, false);
  const auto out = ecic::optimal_length_search(L.inst, L.F, cfg.delta, cfg.limits());
  json steps = json::array();
  for (const auto& s : out.steps) steps.push_back({{"N", s.length}, {"status", status_name(s.status)}, {"nodes", s.nodes}});
  json doc{{"q", L.F.order()},
           {"delta", cfg.delta},
           {"complete", out.complete},
           {"optimal_N", opt_json(out.optimal_N)},
           {"start", out.start},
           {"upper", opt_json(out.upper)},
           {"infeasible_below", opt_json(out.infeasible_below)},
           {"smallest_feasible", opt_json(out.smallest_feasible)},
           {"steps", steps},
           {"nodes", out.nodes}};
  std::ostringstream text;
  for (const auto& s : out.steps) text << "N = " << s.length << ": " << status_name(s.status) << " (" << s.nodes << " nodes)\n";
  if (out.witness) {
    doc["witness"] = ecic::format_matrix(L.F.order(), out.witness->matrix());
    text << "optimal N = " << *out.optimal_N << "\nwitness:\n" << ecic::format_matrix(L.F.order(), out.witness->matrix());
  } else {
    text << "incomplete: N in [" << opt_str(out.infeasible_below ? std::optional<std::size_t>(*out.infeasible_below + 1) : out.start)
         << ", " << opt_str(out.smallest_feasible) << "]\n";
  }
  emit(cfg, doc, text.str());
  std::cerr << "search time: " << std::fixed << std::setprecision(3) << out.seconds << " s\n";
  return out.complete ? kOk : kBudget;
}

int run_construct(const RunConfig& cfg) {
  const auto L = load(cfg, false);
  const auto lim = cfg.limits();
  std::optional<ecic::LinearIndexCode> code;
  std::size_t trials_used = 0;
  if (cfg.strategy == "concat" || cfg.strategy == "mds-concat") {
    const auto mr = ecic::min_rank(L.inst, L.F, lim.min_rank_exponent);
    const auto inner = ecic::optimal_ic_matrix(L.F, mr);
    const std::size_t d = 2 * cfg.delta + 1;
    ecic::Matrix outer = cfg.strategy == "concat"
                             ? ecic::shortest_code_generator(L.F, mr.kappa, d, lim.nodes, lim.jobs)
                             : (mr.kappa == 0 ? ecic::Matrix(0, 0) : ecic::mds_generator(L.F, mr.kappa, mr.kappa + 2 * cfg.delta));
    code = ecic::concatenate_construction(L.inst, L.F, cfg.delta, inner, outer, lim.enumeration);
  } else if (cfg.strategy == "random") {
    const std::size_t N = cfg.length ? cfg.length : ecic::random_coding_length(L.inst, L.F, cfg.delta);
    auto r = ecic::random_construct(L.inst, L.F, cfg.delta, N, cfg.trials, cfg.seed, std::nullopt, lim.enumeration);
    trials_used = r.trials_used;
    code = std::move(r.code);
    if (!code) {
      json doc{{"strategy", cfg.strategy}, {"N", N}, {"found", false}, {"trials", trials_used}};
      emit(cfg, doc, "no (" + std::to_string(cfg.delta) + ",H)-ECIC of length " + std::to_string(N) + " in " +
                         std::to_string(trials_used) + " trials\n");
      return kFail;
    }
  } else {
    throw Error(ErrorKind::MalformedDocument, "unknown strategy \"" + cfg.strategy + "\"");
  }
  const auto text = ecic::format_matrix(L.F.order(), code->matrix());
  json doc{{"strategy", cfg.strategy}, {"N", code->length()}, {"found", true}, {"matrix", text}};
  if (cfg.strategy == "random") doc["trials"] = trials_used;
  emit(cfg, doc, text);
  return kOk;
}

int run_simulate(const RunConfig& cfg) {
  const auto L = load(cfg, true);
  const ecic::LinearIndexCode code(L.inst, L.F, *L.matrix);
  const std::size_t n = L.inst.messages(), N = code.length();
  ecic::CounterRng rng(cfg.seed);

  struct Round {
    ecic::Vector x, error;
  };
  std::vector<Round> rounds;
  auto random_message = [&] {
    ecic::Vector x(n);
    for (auto& v : x) v = static_cast<Elem>(rng.below(L.F.order()));
    return x;
  };
  if (cfg.random_errors > 0) {
    for (std::size_t t = 0; t < cfg.random_errors; ++t) {
      Round r{cfg.message.empty() ? random_message() : parse_vector(cfg.message, n, L.F), ecic::Vector(N, 0)};
      // Weight uniform in 0..δ, positions without repetition, nonzero values.
      const std::size_t w = std::min<std::size_t>(N, rng.below(cfg.delta + 1));
      std::vector<std::size_t> pos(N);
      for (std::size_t j = 0; j < N; ++j) pos[j] = j;
      for (std::size_t j = 0; j < w; ++j) {
        std::swap(pos[j], pos[j + rng.below(N - j)]);
        r.error[pos[j]] = static_cast<Elem>(1 + rng.below(L.F.order() - 1));
      }
      rounds.push_back(std::move(r));
    }
  } else {
    rounds.push_back({cfg.message.empty() ? random_message() : parse_vector(cfg.message, n, L.F),
                      cfg.error.empty() ? ecic::Vector(N, 0) : parse_vector(cfg.error, N, L.F)});
  }

  bool all_ok = true;
  json lines = json::array();
  std::ostringstream text;
  for (std::size_t t = 0; t < rounds.size(); ++t) {
    const auto outcomes = ecic::simulate_round(code, rounds[t].x, rounds[t].error, cfg.delta);
    for (const auto& o : outcomes) {
      all_ok = all_ok && *o.success;
      json line{{"round", t},
                {"receiver", o.receiver + 1},
                {"x", rounds[t].x},
                {"error", rounds[t].error},
                {"error_weight", ecic::hamming_weight(rounds[t].error)},
                {"recovered", o.recovered},
                {"expected", rounds[t].x[L.inst.demand(o.receiver)]},
                {"estimate", o.error_estimate},
                {"estimate_weight", o.estimate_weight},
                {"beyond_cap", o.beyond_cap},
                {"success", *o.success}};
      if (cfg.format == "jsonl") std::cout << line.dump() << '\n';
      lines.push_back(std::move(line));
      text << "round " << t << " R" << o.receiver + 1 << ": x_f = " << o.recovered << " ("
           << (*o.success ? "ok" : "WRONG") << "), |e^| = " << o.estimate_weight << '\n';
    }
  }
  if (cfg.format != "jsonl") emit(cfg, json{{"outcomes", lines}, {"all_success", all_ok}}, text.str());
  return all_ok ? kOk : kFail;
}

int run_check(const RunConfig& cfg) {
  const auto L = load(cfg, true);
  const ecic::LinearIndexCode code(L.inst, L.F, *L.matrix);
  const auto rep = ecic::exhaustive_correctness_check(code, cfg.delta, cfg.enum_budget);
  json doc{{"delta", cfg.delta}, {"correct", rep.correct}, {"estimates_relevant", rep.estimates_relevant},
           {"decodes", rep.decodes}};
  std::ostringstream text;
  text << (rep.correct ? "PASS" : "FAIL") << ": " << rep.decodes << " decodes, relevant-error property "
       << (rep.estimates_relevant ? "holds" : "violated") << '\n';
  if (rep.counterexample) {
    const auto& c = *rep.counterexample;
    doc["counterexample"] = {{"x", c.x}, {"error", c.error}, {"receiver", c.receiver + 1}, {"recovered", c.recovered}};
    text << "counterexample: receiver " << c.receiver + 1 << ", x =";
    for (auto v : c.x) text << ' ' << v;
    text << ", error =";
    for (auto v : c.error) text << ' ' << v;
    text << ", decoded " << c.recovered << '\n';
  }
  emit(cfg, doc, text.str());
  return rep.correct ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error-correcting index codes over finite fields"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--instance", cfg.instance, "instance JSON file or built-in name")->capture_default_str();
    sub->add_option("--matrix", cfg.matrix, "matrix file, or example1 | pentagon | identity");
    sub->add_option("--q", cfg.q, "field order (prime power)");
    sub->add_option("--delta", cfg.delta, "number of errors to correct")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--node-budget", cfg.node_budget, "search node budget")->capture_default_str();
    sub->add_option("--enum-budget", cfg.enum_budget, "enumeration budget (vectors)")->capture_default_str();
    sub->add_option("--jobs", cfg.jobs, "worker threads for searches")->capture_default_str();
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text", "jsonl"}));
    return sub;
  };

  std::map<CLI::App*, int (*)(const RunConfig&)> handlers;
  handlers[common(app.add_subcommand("validate", "check an instance (and matrix) file"))] = run_validate;
  handlers[common(app.add_subcommand("params", "alpha(H) and kappa_q(H) with witnesses"))] = run_params;
  handlers[common(app.add_subcommand("bounds", "alpha, kappa, Singleton and random-coding bounds"))] = run_bounds;
  handlers[common(app.add_subcommand("verify", "check that a matrix is a (delta,H)-ECIC"))] = run_verify;
  handlers[common(app.add_subcommand("radius", "largest delta the matrix corrects"))] = run_radius;
  handlers[common(app.add_subcommand("search", "exact optimal length by exhaustive search"))] = run_search;
  auto* construct = common(app.add_subcommand("construct", "build a (delta,H)-ECIC"));
  construct->add_option("--strategy", cfg.strategy)->check(CLI::IsMember({"concat", "random", "mds-concat"}))->capture_default_str();
  construct->add_option("--length", cfg.length, "code length for the random strategy (default: random-coding bound)");
  construct->add_option("--trials", cfg.trials, "random trials")->capture_default_str();
  handlers[construct] = run_construct;
  auto* simulate = common(app.add_subcommand("simulate", "broadcast, inject errors and decode"));
  simulate->add_option("--error", cfg.error, "error vector, e.g. \"0 1 0 0\"");
  simulate->add_option("--message", cfg.message, "message vector x (default: random from --seed)");
  simulate->add_option("--random-errors", cfg.random_errors, "rounds with random errors of weight <= delta");
  handlers[simulate] = run_simulate;
  handlers[common(app.add_subcommand("check", "exhaustive decoder correctness check"))] = run_check;

  bool simulate_format_set = false;
  try {
    app.parse(argc, argv);
    simulate_format_set = simulate->count("--format") > 0;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }
  if (*simulate && !simulate_format_set) cfg.format = "jsonl";

  for (auto& [sub, fn] : handlers) {
    if (!*sub) continue;
    try {
      return fn(cfg);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return exit_code(e);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kInput;
    }
  }
  return kInput;
}
