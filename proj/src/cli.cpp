#include "collatz/cli.hpp"

#include "collatz/accel.hpp"
#include "collatz/families.hpp"
#include "collatz/representation.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

namespace collatz::cli {
namespace {

using nlohmann::json;

std::string dec(const Nat& n) { return n.str(); }
std::string dec(std::uint64_t n) { return std::to_string(n); }

Nat parse_nat(const std::string& text, const char* what) {
  Nat n;
  try {
    n = Nat(text);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string(what) + ": '" + text + "' is not an integer");
  }
  if (n < 0) throw std::invalid_argument(std::string(what) + ": must be >= 0");
  return n;
}

OddNat parse_odd(const std::string& text, const char* what) {
  Nat n = parse_nat(text, what);
  if (n < 1 || !boost::multiprecision::bit_test(n, 0))
    throw std::invalid_argument(std::string(what) + ": must be odd and >= 1");
  return OddNat(std::move(n));
}

std::vector<std::uint64_t> parse_exponents(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("exponents: '" + item + "' is not a nonnegative integer");
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw std::invalid_argument("exponents: empty list");
  return out;
}

// Duplicates every write into --out FILE, byte for byte.
class Sink {
 public:
  Sink(std::ostream& out, std::string path) : out_(out), path_(std::move(path)) {}
  void write(const std::string& bytes) const {
    out_ << bytes;
    if (!path_.empty()) {
      std::ofstream f(path_, std::ios::binary | std::ios::trunc);
      if (!f) throw std::invalid_argument("cannot open output file: " + path_);
      f << bytes;
    }
  }

 private:
  std::ostream& out_;
  std::string path_;
};

// Every machine-readable reply uses the same envelope. nlohmann::json keeps
// keys sorted, and all numbers are exact decimal strings, so the bytes are
// deterministic for fixed semantic parameters.
struct Envelope {
  std::string command;
  json parameters = json::object();
  json result = json::object();
  std::vector<std::string> diagnostics;

  std::string render() const {
    json j;
    j["command"] = command;
    j["diagnostics"] = diagnostics;
    j["parameters"] = parameters;
    j["result"] = result;
    return j.dump(2) + "\n";
  }
};

json step_json(const StepRecord& s) {
  return json{{"after", dec(s.after.value())},
              {"before", dec(s.before.value())},
              {"valuation", dec(s.valuation)}};
}

json strings(const std::vector<Nat>& values) {
  json a = json::array();
  for (const Nat& v : values) a.push_back(dec(v));
  return a;
}

std::string identity_string(const Nat& value, const Representation& r) {
  const std::uint64_t k = r.k();
  std::string s = dec(value) + " = (2^" + dec(r.exponents[k]) + " - (";
  for (std::uint64_t i = 0; i <= k; ++i) {
    if (i) s += " + ";
    std::uint64_t n_i = i == 0 ? 0 : r.exponents[i - 1];
    s += "3^" + dec(k - i) + "*2^" + dec(n_i);
  }
  s += "))/3^" + dec(k + 1);
  return s;
}

int cmd_trajectory(const std::string& x_str, bool accelerated, std::uint64_t max_steps,
                   const std::string& format, const Sink& sink) {
  OddNat x = parse_odd(x_str, "x");
  Envelope env;
  env.command = "trajectory";
  env.parameters =
      json{{"accelerated", accelerated}, {"max_steps", dec(max_steps)}, {"x", dec(x.value())}};

  bool reached = false;
  std::vector<Nat> iterates;
  if (!accelerated) {
    Trajectory t = trajectory(x, max_steps);
    reached = t.reached_one;
    iterates = t.iterates();
    json steps = json::array();
    for (const StepRecord& s : t.steps) steps.push_back(step_json(s));
    env.result = json{{"iterates", strings(iterates)},
                      {"odd_step_count", dec(t.odd_step_count)},
                      {"peak", dec(t.peak)},
                      {"reached_one", t.reached_one},
                      {"start", dec(t.start.value())},
                      {"steps", std::move(steps)},
                      {"total_t_steps", dec(t.odd_step_count)}};
  } else {
    AcceleratedTrajectory a = fast_trajectory(x, max_steps);
    reached = a.reached_one;
    iterates = a.visited();
    json rounds = json::array();
    for (const JumpSegment& r : a.rounds)
      rounds.push_back(json{{"landed", dec(r.landed.value())},
                            {"n", dec(r.dec.n)},
                            {"step", step_json(r.exit_step)},
                            {"steps_skipped", dec(r.steps_skipped)},
                            {"x", dec(r.dec.x)}});
    env.result = json{{"iterates", strings(iterates)},
                      {"peak", dec(a.peak)},
                      {"reached_one", a.reached_one},
                      {"rounds", std::move(rounds)},
                      {"start", dec(a.start.value())},
                      {"total_t_steps", dec(a.total_t_steps)}};
  }
  if (!reached)
    env.diagnostics.push_back("undecided: step budget " + dec(max_steps) +
                              " exhausted before reaching 1");

  if (format == "json") {
    sink.write(env.render());
  } else if (format == "csv") {
    std::string csv = "index,value\n";
    for (std::size_t i = 0; i < iterates.size(); ++i)
      csv += dec(static_cast<std::uint64_t>(i)) + "," + dec(iterates[i]) + "\n";
    sink.write(csv);
  } else {
    std::ostringstream text;
    text << (accelerated ? "accelerated trajectory of " : "trajectory of ") << x.value() << "\n  ";
    for (std::size_t i = 0; i < iterates.size(); ++i) {
      if (i) text << " -> ";
      text << iterates[i];
    }
    text << "\npeak " << env.result["peak"].get<std::string>() << ", T-steps "
         << env.result["total_t_steps"].get<std::string>() << ", reached one: "
         << (reached ? "yes" : "no") << "\n";
    for (const std::string& d : env.diagnostics) text << "note: " << d << "\n";
    sink.write(text.str());
  }
  return reached ? kExitOk : kExitUndecided;
}

int cmd_jump(const std::string& y_str, const Sink& sink) {
  OddNat y = parse_odd(y_str, "y");
  Decomposition d = decompose(y);
  JumpReport r = jump(d, /*check_against_naive=*/true);
  StepRecord next = t_step(r.landed);
  Envelope env;
  env.command = "jump";
  env.parameters = json{{"y", dec(y.value())}};
  env.result = json{
      {"decomposition", json{{"n", dec(d.n)}, {"x", dec(d.x)}, {"y", dec(y.value())}}},
      {"landed", dec(r.landed.value())},
      {"naive_equivalent_checked", r.naive_equivalent_checked},
      {"next_step", step_json(next)},
      {"steps_skipped", dec(r.steps_skipped)}};
  env.diagnostics.push_back("closed-form landing T^" + dec(r.steps_skipped) + "(y) = " +
                            dec(r.landed.value()) + " confirmed by replaying " +
                            dec(r.steps_skipped) + " compressed steps");
  if (r.steps_skipped >= 1)
    env.diagnostics.push_back(
        "the rising run from y has length n-2 = " + dec(r.steps_skipped) +
        ", so the landing is T^" + dec(r.steps_skipped) + "(y); the off-by-one T^" +
        dec(r.steps_skipped - 1) + "(y) = " + dec(closed_form_iterate(d, r.steps_skipped - 1)) +
        " stops one step short");
  sink.write(env.render());
  return kExitOk;
}

int cmd_census(std::uint64_t max, const std::string& peak_str, const std::string& method,
               unsigned parallel, const std::string& format, const Sink& sink, std::ostream& err) {
  if (max < 1) throw std::invalid_argument("census: --max must be >= 1");
  Nat target = parse_nat(peak_str, "--peak");
  if (target < 1) throw std::invalid_argument("census: --peak must be >= 1");
  Envelope env;
  env.command = "census";
  env.parameters = json{{"max", dec(max)}, {"method", method}, {"peak", dec(target)}};
  try {
    CensusResult res =
        method == "classes" ? census_classes(max, target) : census_brute(max, target, parallel);
    if (format == "csv") {
      std::string csv = "start,peak,odd_steps\n";
      for (const CensusRecord& rec : res.records)
        csv += dec(rec.start) + "," + dec(rec.peak) + "," + dec(rec.odd_steps) + "\n";
      sink.write(csv);
    } else {
      json records = json::array();
      for (const CensusRecord& rec : res.records)
        records.push_back(json{{"odd_steps", dec(rec.odd_steps)},
                               {"peak", dec(rec.peak)},
                               {"start", dec(rec.start)}});
      env.result = json{{"bound", dec(max)},
                        {"count", dec(static_cast<std::uint64_t>(res.count()))},
                        {"method", method},
                        {"records", std::move(records)},
                        {"target_peak", dec(target)}};
      sink.write(env.render());
    }
    return kExitOk;
  } catch (const UndecidedError& e) {
    if (format == "csv") {
      err << "undecided: " << e.what() << "\n";
    } else {
      env.diagnostics.push_back(std::string("undecided: ") + e.what());
      sink.write(env.render());
    }
    return kExitUndecided;
  }
}

int cmd_family(const std::string& y_str, const std::string& max_str, const Sink& sink) {
  OddNat y = parse_odd(y_str, "y");
  Nat bound = parse_nat(max_str, "--max");
  if (bound < 1) throw std::invalid_argument("family: --max must be >= 1");
  std::vector<Nat> members = enumerate_family(y, bound);
  Envelope env;
  env.command = "family";
  env.parameters = json{{"max", dec(bound)}, {"y", dec(y.value())}};
  env.result = json{{"count", dec(static_cast<std::uint64_t>(members.size()))},
                    {"members", strings(members)}};
  sink.write(env.render());
  return kExitOk;
}

int cmd_represent(const std::string& x_str, const Sink& sink) {
  OddNat x = parse_odd(x_str, "x");
  Envelope env;
  env.command = "represent";
  env.parameters = json{{"x", dec(x.value())}};
  auto rep = extract_representation(x);
  if (!rep) {
    env.diagnostics.push_back("undecided: step budget " + dec(kStepBudget) +
                              " exhausted before reaching 1");
    sink.write(env.render());
    return kExitUndecided;
  }
  EvalResult ev = eval_representation(*rep);
  json exps = json::array();
  for (std::uint64_t e : rep->exponents) exps.push_back(dec(e));
  env.result = json{{"denominator", dec(ev.denominator)},
                    {"exponents", std::move(exps)},
                    {"identity", identity_string(x.value(), *rep)},
                    {"numerator", ev.numerator.str()},
                    {"odd_step_count", dec(static_cast<std::uint64_t>(rep->exponents.size()))},
                    {"value", dec(*ev.value)}};
  sink.write(env.render());
  return kExitOk;
}

int cmd_verify(const std::string& x_str, const std::string& exps_str, const Sink& sink) {
  OddNat x = parse_odd(x_str, "--x");
  Representation rep{parse_exponents(exps_str)};
  bool ok = verify_representation(x, rep);
  Envelope env;
  env.command = "verify";
  env.parameters = json{{"exponents", exps_str}, {"x", dec(x.value())}};
  env.result = json{{"verified", ok}};
  sink.write(env.render());
  return kExitOk;
}

int cmd_eval(const std::string& exps_str, const Sink& sink) {
  Representation rep{parse_exponents(exps_str)};
  EvalResult ev = eval_representation(rep);  // throws on non-increasing lists
  Envelope env;
  env.command = "eval";
  env.parameters = json{{"exponents", exps_str}};
  env.result = json{{"denominator", dec(ev.denominator)},
                    {"integral", ev.integral},
                    {"minimality_violated", ev.minimality_violated},
                    {"numerator", ev.numerator.str()},
                    {"reduced_denominator", dec(ev.reduced_denominator)},
                    {"reduced_numerator", ev.reduced_numerator.str()}};
  if (ev.value) env.result["value"] = dec(*ev.value);
  if (ev.minimality_violated)
    env.diagnostics.push_back(
        "last gap equals 2: the tail encodes the padding step 1 -> 1, so this list is not minimal");
  if (!ev.integral)
    env.diagnostics.push_back("not integral: reduced denominator " + dec(ev.reduced_denominator));
  else if (ev.numerator <= 0)
    env.diagnostics.push_back("numerator is not positive: no odd value corresponds to this list");
  sink.write(env.render());
  return kExitOk;
}

int cmd_uset(std::uint64_t j, std::uint64_t bound, const Sink& sink) {
  std::vector<OddNat> members = u_set(j, bound);
  json arr = json::array();
  for (const OddNat& m : members) arr.push_back(dec(m.value()));
  Envelope env;
  env.command = "uset";
  env.parameters = json{{"bound", dec(bound)}, {"j", dec(j)}};
  env.result = json{{"bound", dec(bound)},
                    {"count", dec(static_cast<std::uint64_t>(members.size()))},
                    {"j", dec(j)},
                    {"members", std::move(arr)}};
  sink.write(env.render());
  return kExitOk;
}

int cmd_partition(std::uint64_t bound, std::uint64_t j_max, const Sink& sink) {
  PartitionReport rep = partition_check(bound, j_max);
  json sizes = json::array();
  for (const auto& [j, n] : rep.class_sizes)
    sizes.push_back(json{{"count", dec(n)}, {"j", dec(j)}});
  Envelope env;
  env.command = "partition";
  env.parameters = json{{"bound", dec(bound)}, {"j_max", dec(j_max)}};
  env.result = json{{"bound", dec(bound)},
                    {"class_sizes", std::move(sizes)},
                    {"covered", rep.all_covered()},
                    {"double_covered", strings(rep.double_covered)},
                    {"j_max", dec(j_max)},
                    {"over_j_max", strings(rep.over_j_max)},
                    {"undecided", strings(rep.undecided)}};
  if (!rep.over_j_max.empty())
    env.diagnostics.push_back(dec(static_cast<std::uint64_t>(rep.over_j_max.size())) +
                              " value(s) need more than j_max steps; raise --jmax to cover them");
  if (!rep.undecided.empty())
    env.diagnostics.push_back(dec(static_cast<std::uint64_t>(rep.undecided.size())) +
                              " value(s) undecided within the step budget");
  sink.write(env.render());
  return rep.undecided.empty() ? kExitOk : kExitUndecided;
}

int cmd_bracket(const std::string& x0_str, std::uint64_t window, const Sink& sink) {
  OddNat x0 = parse_odd(x0_str, "x0");
  Envelope env;
  env.command = "bracket";
  env.parameters = json{{"window", dec(window)}, {"x0", dec(x0.value())}};
  try {
    BracketReport rep = bracket_experiment(x0, window);
    json rows = json::array();
    for (const BracketRow& row : rep.rows) {
      json r{{"i", dec(row.i)}};
      if (row.lower) {
        r["lower"] = dec(*row.lower);
        r["gap_below"] = dec(*row.gap_below);
      }
      if (row.upper) {
        r["upper"] = dec(*row.upper);
        r["gap_above"] = dec(*row.gap_above);
      }
      rows.push_back(std::move(r));
    }
    env.result = json{{"k", dec(rep.k)},
                      {"rows", std::move(rows)},
                      {"window", dec(window)},
                      {"x0", dec(x0.value())}};
    sink.write(env.render());
    return kExitOk;
  } catch (const UndecidedError& e) {
    env.diagnostics.push_back(std::string("undecided: ") + e.what());
    sink.write(env.render());
    return kExitUndecided;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact arithmetic for the compressed 3x+1 map"};
  app.name("collatz");
  app.require_subcommand(1);

  auto* traj = app.add_subcommand("trajectory", "follow an odd start under the compressed map");
  std::string traj_x;
  bool traj_accel = false;
  std::uint64_t traj_max_steps = kStepBudget;
  std::string traj_format = "json", traj_out;
  traj->add_option("x", traj_x, "odd start value")->required();
  traj->add_flag("--accelerated", traj_accel, "jump whole rising runs in closed form");
  traj->add_option("--max-steps", traj_max_steps, "step budget (rounds when --accelerated)");
  traj->add_option("--format", traj_format)->check(CLI::IsMember({"json", "csv", "text"}));
  traj->add_option("--out", traj_out, "duplicate output into FILE");

  auto* jmp = app.add_subcommand("jump", "decompose y and jump its whole rising run at once");
  std::string jump_y, jump_out;
  jmp->add_option("y", jump_y, "odd value")->required();
  jmp->add_option("--out", jump_out, "duplicate output into FILE");

  auto* cen = app.add_subcommand("census", "all starts up to a bound whose orbit peak hits a target");
  std::uint64_t cen_max = 0;
  std::string cen_peak, cen_method = "brute", cen_format = "json", cen_out;
  unsigned cen_parallel = 1;
  cen->add_option("--max", cen_max, "largest start to scan")->required();
  cen->add_option("--peak", cen_peak, "target orbit peak")->required();
  cen->add_option("--method", cen_method)->check(CLI::IsMember({"brute", "classes"}));
  cen->add_option("--parallel", cen_parallel, "worker threads for the scan");
  cen->add_option("--format", cen_format)->check(CLI::IsMember({"json", "csv"}));
  cen->add_option("--out", cen_out, "duplicate output into FILE");

  auto* fam = app.add_subcommand("family", "all values sharing y's orbit tail, up to a bound");
  std::string fam_y, fam_max = "1000", fam_out;
  fam->add_option("y", fam_y, "odd base value")->required();
  fam->add_option("--max", fam_max, "largest member to report");
  fam->add_option("--out", fam_out, "duplicate output into FILE");

  auto* rep = app.add_subcommand("represent", "exponent-list identity for x's full descent");
  std::string rep_x, rep_out;
  rep->add_option("x", rep_x, "odd value")->required();
  rep->add_option("--out", rep_out, "duplicate output into FILE");

  auto* ver = app.add_subcommand("verify", "check an exponent list against x's own descent");
  std::string ver_x, ver_exps, ver_out;
  ver->add_option("--x", ver_x, "odd value")->required();
  ver->add_option("--exponents", ver_exps, "comma-separated list")->required();
  ver->add_option("--out", ver_out, "duplicate output into FILE");

  auto* evl = app.add_subcommand("eval", "evaluate an exponent list exactly");
  std::string evl_exps, evl_out;
  evl->add_option("--exponents", evl_exps, "comma-separated list")->required();
  evl->add_option("--out", evl_out, "duplicate output into FILE");

  auto* ust = app.add_subcommand("uset", "odd values reaching 1 in exactly j compressed steps");
  std::uint64_t ust_j = 0, ust_bound = 0;
  std::string ust_out;
  ust->add_option("--j", ust_j, "step count")->required();
  ust->add_option("--bound", ust_bound, "largest value to scan")->required();
  ust->add_option("--out", ust_out, "duplicate output into FILE");

  auto* par = app.add_subcommand("partition", "bin every odd value <= bound by steps to 1");
  std::uint64_t par_bound = 0, par_jmax = 0;
  std::string par_out;
  par->add_option("--bound", par_bound, "largest value to scan")->required();
  par->add_option("--jmax", par_jmax, "largest class index counted as covered")->required();
  par->add_option("--out", par_out, "duplicate output into FILE");

  auto* bra = app.add_subcommand("bracket", "nearest same-class neighbors around x0");
  std::string bra_x0, bra_out;
  std::uint64_t bra_window = 10'000;
  bra->add_option("x0", bra_x0, "odd center value")->required();
  bra->add_option("--window", bra_window, "half-width of the scanned interval");
  bra->add_option("--out", bra_out, "duplicate output into FILE");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(traj))
      return cmd_trajectory(traj_x, traj_accel, traj_max_steps, traj_format,
                            Sink(out, traj_out));
    if (app.got_subcommand(jmp)) return cmd_jump(jump_y, Sink(out, jump_out));
    if (app.got_subcommand(cen))
      return cmd_census(cen_max, cen_peak, cen_method, cen_parallel, cen_format,
                        Sink(out, cen_out), err);
    if (app.got_subcommand(fam)) return cmd_family(fam_y, fam_max, Sink(out, fam_out));
    if (app.got_subcommand(rep)) return cmd_represent(rep_x, Sink(out, rep_out));
    if (app.got_subcommand(ver)) return cmd_verify(ver_x, ver_exps, Sink(out, ver_out));
    if (app.got_subcommand(evl)) return cmd_eval(evl_exps, Sink(out, evl_out));
    if (app.got_subcommand(ust)) return cmd_uset(ust_j, ust_bound, Sink(out, ust_out));
    if (app.got_subcommand(par)) return cmd_partition(par_bound, par_jmax, Sink(out, par_out));
    if (app.got_subcommand(bra)) return cmd_bracket(bra_x0, bra_window, Sink(out, bra_out));
  } catch (const UndecidedError& e) {
    err << "undecided: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace collatz::cli
