#include "lfs/blum.hpp"
#include "lfs/dump.hpp"
#include "lfs/finite_extension.hpp"
#include "lfs/trace.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

namespace {

lfs::Enumeration load_enumeration(const std::string& corpus_path) {
  if (corpus_path.empty()) return lfs::default_enumeration();
  std::ifstream f(corpus_path);
  if (!f) throw std::invalid_argument("cannot open corpus file: " + corpus_path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return lfs::load_corpus(ss.str());
}

// Trace sink: a file when --trace is given, stdout otherwise.
struct TraceSink {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit TraceSink(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw std::invalid_argument("cannot open trace file: " + path);
      os = &file;
    }
  }
};

const char* fe_outcome_name(lfs::FEStageRecord::Outcome o) {
  switch (o) {
    case lfs::FEStageRecord::Outcome::DiagonalFound:
      return "diagonal-found";
    case lfs::FEStageRecord::Outcome::FallbackBudgetLimited:
      return "fallback-budget-limited";
    default:
      return "fallback-no-witness-possible";
  }
}

int cmd_fe(std::uint64_t stages, std::uint64_t budget, const std::string& corpus,
           const std::string& trace_path) {
  auto en = load_enumeration(corpus);
  TraceSink sink(trace_path);
  lfs::TraceWriter tw(*sink.os);
  lfs::FEState st;
  for (std::uint64_t s = 0; s < stages; ++s) {
    st = lfs::fe_stage(en, std::move(st), budget);
    const auto& rec = st.log.back();
    nlohmann::json payload;
    payload["e"] = rec.e;
    payload["i"] = rec.i;
    payload["outcome"] = fe_outcome_name(rec.outcome);
    payload["search_steps"] = rec.search_steps;
    payload["sigma"] = st.sigma.to_bits();
    if (rec.outcome == lfs::FEStageRecord::Outcome::DiagonalFound) {
      payload["tau"] = rec.tau.to_bits();
      payload["value_phi"] = rec.value_phi;
      payload["value_r"] = rec.value_r;
      payload["witness"] = rec.witness;
    }
    tw.emit(s + 1, "finite-extension", "stage", std::move(payload));
  }
  return 0;
}

int cmd_ce(std::uint64_t stages, const std::vector<std::string>& l_reqs,
           const std::vector<std::uint64_t>& p_reqs, const std::string& corpus,
           const std::string& trace_path) {
  auto en = load_enumeration(corpus);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> ls;
  for (const auto& r : l_reqs) {
    auto comma = r.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("--l-req wants e,i");
    ls.emplace_back(std::stoull(r.substr(0, comma)),
                    std::stoull(r.substr(comma + 1)));
  }
  auto res = lfs::ce_run(en, ls, p_reqs, stages);

  TraceSink sink(trace_path);
  lfs::TraceWriter tw(*sink.os);
  for (const auto& ev : res.trace) {
    nlohmann::json payload;
    for (const auto& [k, v] : ev.payload) payload[k] = v;
    payload["strategy"] = ev.strategy;
    tw.emit(ev.stage, "dump-construction", ev.action, std::move(payload));
  }
  nlohmann::json fin;
  std::ostringstream mem;
  for (auto m : res.a.members) mem << m << ' ';
  fin["members"] = mem.str();
  fin["intervals"] = res.a.history.size();
  tw.emit(stages, "dump-construction", "final-set", std::move(fin));
  return 0;
}

lfs::BudgetSchedule schedule_by_name(const std::string& name) {
  if (name == "2exp") return lfs::BudgetSchedule::simple_2exp();
  if (name == "square") return lfs::BudgetSchedule::iterated();
  throw std::invalid_argument("unknown schedule: " + name);
}

int cmd_blum(const std::string& schedule, std::uint64_t max_len,
             const std::string& corpus) {
  auto en = load_enumeration(corpus);
  auto built = lfs::build_R(en, schedule_by_name(schedule), max_len);
  std::set<std::uint64_t> lengths_hit;
  for (const auto& [i, rec] : built.reg.records)
    if (!lengths_hit.insert(rec.length).second)
      throw std::logic_error("registry: two deactivations at one length");
  std::cout << "R-table\n"
            << lfs::serialize_rtable(built.r) << "registry\n"
            << lfs::serialize_registry(built.reg) << "probe-steps "
            << built.probe_steps << "\n";
  return 0;
}

int cmd_speedup(std::uint64_t k, std::uint64_t max_len, const std::string& corpus) {
  auto en = load_enumeration(corpus);
  auto sched = lfs::BudgetSchedule::iterated();
  auto built = lfs::build_R(en, sched, max_len);
  auto adv = lfs::advice(built.reg, k);
  std::uint64_t cutoff = lfs::phase1_cutoff(en, sched, adv);

  std::cout << "k " << k << " cutoff " << cutoff << " sigma";
  for (auto i : adv.sigma) std::cout << ' ' << i;
  std::cout << "\n";

  std::uint64_t agree = 0, total = 0;
  for (std::uint64_t n = cutoff + 1; n <= max_len; ++n) {
    lfs::Nat measured_max = 0;
    for (std::uint64_t val = 0; val < (std::uint64_t{1} << n); ++val) {
      lfs::Word x = lfs::word_of(n, val);
      auto fr = lfs::fast_R_with_advice(en, sched, adv, x, built.r);
      ++total;
      ++agree;  // fast_R_with_advice checks agreement itself
      measured_max = std::max(measured_max, fr.measured);
    }
    lfs::Nat full = lfs::full_replay_steps(en, sched, lfs::word_of(n, 0));
    std::cout << "len " << n << " measured-max " << measured_max
              << " full-replay " << full << "\n";
    if (measured_max >= full)
      throw std::logic_error("speedup: measured not below full replay");
  }
  std::cout << "agreement " << agree << "/" << total << "\n";
  return 0;
}

int cmd_schnorr(std::uint64_t horizon, const std::string& corpus) {
  auto en = load_enumeration(corpus);
  auto built = lfs::build_R(en, lfs::BudgetSchedule::simple_2exp(), horizon);
  for (std::uint64_t n = 0; n <= horizon; ++n) {
    auto m = lfs::cn_measure(n, built.r);
    // bound: m <= 1/2^n  <=>  m.num * 2^n <= m.den
    bool ok = m.num * (lfs::Nat(1) << n) <= m.den;
    std::cout << "C_" << n << " " << m.str() << (ok ? " ok" : " VIOLATION")
              << "\n";
    if (!ok) throw std::logic_error("schnorr: measure bound violated");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oracle-machine construction workbench"};
  app.require_subcommand(1);

  std::string corpus, trace_path, schedule = "square";
  std::uint64_t stages = 0, budget = 1, max_len = 8, k = 2, horizon = 8;
  std::vector<std::string> l_reqs;
  std::vector<std::uint64_t> p_reqs;

  auto* fe = app.add_subcommand("fe", "finite-extension construction");
  fe->add_option("--stages", stages)->required();
  fe->add_option("--budget", budget)->required();
  fe->add_option("--corpus", corpus);
  fe->add_option("--trace", trace_path);

  auto* ce = app.add_subcommand("ce", "c.e. dump construction");
  ce->add_option("--stages", stages)->required();
  ce->add_option("--l-req", l_reqs, "lowness requirement as e,i");
  ce->add_option("--p-req", p_reqs, "incomparability requirement index e");
  ce->add_option("--corpus", corpus);
  ce->add_option("--trace", trace_path);

  auto* blum = app.add_subcommand("blum", "diagonal set R");
  blum->add_option("--schedule", schedule)->check(CLI::IsMember({"2exp", "square"}));
  blum->add_option("--max-len", max_len);
  blum->add_option("--corpus", corpus);

  auto* speedup = app.add_subcommand("speedup", "advice-based fast R");
  speedup->add_option("--k", k);
  speedup->add_option("--max-len", max_len);
  speedup->add_option("--corpus", corpus);

  auto* schnorr = app.add_subcommand("schnorr", "block functional measures");
  schnorr->add_option("--horizon", horizon);
  schnorr->add_option("--corpus", corpus);

  try {
    app.parse(argc, argv);
    if (fe->parsed()) return cmd_fe(stages, budget, corpus, trace_path);
    if (ce->parsed()) return cmd_ce(stages, l_reqs, p_reqs, corpus, trace_path);
    if (blum->parsed()) return cmd_blum(schedule, max_len, corpus);
    if (speedup->parsed()) return cmd_speedup(k, max_len, corpus);
    if (schnorr->parsed()) return cmd_schnorr(horizon, corpus);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  }
}
