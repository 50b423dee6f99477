// Copyright 2026 The SparseTrig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line entry point. Subcommands: exponent, gen, approx, norm, rates,
// oracle, dump. Every artifact embeds the effective key = value configuration
// so a run can be reproduced byte-for-byte from any of its outputs.
//
// Exit codes: 0 success / all verdicts pass, 1 verdict failure or IO error,
// 2 usage or parameter-regime error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "sparsetrig/sparsetrig.hpp"

namespace st = sparsetrig;
namespace fs = std::filesystem;

namespace {

struct GlobalOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::string seed_text;
  bool json = false;
};

st::RunConfig load_config(const GlobalOpts& g) {
  st::RunConfig cfg;
  if (!g.config_path.empty()) cfg = st::RunConfig::from_file(g.config_path);
  if (!g.seed_text.empty()) cfg.set("seed", g.seed_text);
  return cfg;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

st::GenKind parse_kind(const std::string& text) {
  const std::string t = lower(text);
  if (t == "randombesov" || t == "random_besov") return st::GenKind::kRandomBesov;
  if (t == "singleblock" || t == "single_block") return st::GenKind::kSingleBlock;
  if (t == "sobolev") return st::GenKind::kSobolev;
  throw std::invalid_argument("unknown generator kind: " + text);
}

st::PhiKind parse_phi(const std::string& text) {
  const std::string t = lower(text);
  if (t == "randomsigns" || t == "random_signs") return st::PhiKind::kRandomSigns;
  if (t == "constant") return st::PhiKind::kConstant;
  throw std::invalid_argument("unknown phi kind: " + text);
}

st::Scheme parse_scheme(const std::string& text) {
  const std::string t = lower(text);
  if (t == "casea" || t == "case_a") return st::Scheme::kCaseA;
  if (t == "caseb" || t == "case_b") return st::Scheme::kCaseB;
  if (t == "univariate") return st::Scheme::kUnivariate;
  if (t == "greedy") return st::Scheme::kGreedy;
  if (t == "orth" || t == "orthogonal") return st::Scheme::kOrthogonal;
  throw std::invalid_argument("unknown scheme: " + text);
}

st::TargetMode parse_target_mode(const std::string& text) {
  const std::string t = lower(text);
  if (t == "bq1" || t == "binf1") return st::TargetMode::kBq1;
  if (t == "lq" || t == "linf") return st::TargetMode::kLq;
  throw std::invalid_argument("unknown target: " + text);
}

st::BlockMode parse_block_mode(const std::string& text) {
  const std::string t = lower(text);
  if (t == "vp") return st::BlockMode::kVp;
  if (t == "sharp") return st::BlockMode::kSharp;
  throw std::invalid_argument("unknown block mode: " + text);
}

// Makes a default explicit in the echo while preserving the user's text.
void ensure_default(st::RunConfig& cfg, const std::string& key, const std::string& fallback) {
  cfg.set(key, cfg.get(key, fallback));
}

// GenSpec from config keys; defaults become explicit for the echo.
st::GenSpec gen_spec_from_config(st::RunConfig& cfg) {
  ensure_default(cfg, "kind", "randombesov");
  ensure_default(cfg, "d", "1");
  ensure_default(cfg, "r", "1");
  ensure_default(cfg, "p", "2");
  ensure_default(cfg, "theta", "inf");
  ensure_default(cfg, "smax", "6");
  ensure_default(cfg, "seed", "1");
  ensure_default(cfg, "level", "3");
  ensure_default(cfg, "alpha", "0");
  ensure_default(cfg, "phi", "randomsigns");
  ensure_default(cfg, "K", "0");

  st::GenSpec spec;
  spec.kind = parse_kind(cfg.get_required("kind"));
  spec.cp = st::ClassParams(static_cast<int>(cfg.get_index("d", 1)), cfg.get_real("r", 1.0),
                            cfg.get_real("p", 2.0), cfg.get_real("theta", st::kInf));
  spec.s_max = static_cast<int>(cfg.get_index("smax", 6));
  spec.seed = cfg.get_u64("seed", 1);
  spec.block_level = static_cast<int>(cfg.get_index("level", 3));
  spec.alpha = cfg.get_real("alpha", 0.0);
  spec.phi_kind = parse_phi(cfg.get_required("phi"));
  spec.phi_degree = cfg.get_index("K", 0);
  return spec;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
  os << content;
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

st::CoeffGrid<double> read_grid_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open dump: " + path);
  return st::read_dump_grid<double>(is);
}

// ---------------------------------------------------------------------------
// exponent
// ---------------------------------------------------------------------------

int cmd_exponent(st::RunConfig cfg, const GlobalOpts& g) {
  st::ExponentQuery query;
  const std::string quantity = lower(cfg.get("quantity", "em"));
  if (quantity == "em") {
    query.quantity = st::Quantity::kEm;
  } else if (quantity == "emperp" || quantity == "em_perp") {
    query.quantity = st::Quantity::kEmPerp;
  } else {
    throw std::invalid_argument("unknown quantity: " + quantity);
  }
  const std::string cls = lower(cfg.get("class", "besov"));
  if (cls == "besov") {
    query.cls = st::FuncClass::kBesov;
  } else if (cls == "sobolev") {
    query.cls = st::FuncClass::kSobolev;
  } else {
    throw std::invalid_argument("unknown class: " + cls);
  }
  const std::string target = lower(cfg.get("target", "bq1"));
  if (target == "bq1") query.target = st::Target::kBq1;
  else if (target == "lq") query.target = st::Target::kLq;
  else if (target == "binf1") query.target = st::Target::kBinf1;
  else if (target == "linf") query.target = st::Target::kLinf;
  else throw std::invalid_argument("unknown target: " + target);

  query.d = static_cast<int>(cfg.get_index("d", 1));
  query.r = cfg.get_real("r", 1.0);
  query.p = cfg.get_real("p", 2.0);
  query.theta = cfg.get_real("theta", st::kInf);
  query.q = cfg.get_real("q", 2.0);
  query.alpha = cfg.get_real("alpha", 0.0);

  const st::ExponentResult res = st::theoretical_exponent(query);
  if (g.json) {
    std::cout << st::exponent_to_json(query, res).dump(2) << "\n";
  } else {
    switch (res.status) {
      case st::CoverageStatus::kCovered:
        std::printf("exponent = %.12g    # %s\n", res.exponent, res.clause.c_str());
        break;
      case st::CoverageStatus::kOpenCase:
        std::printf("open case: %s\n", res.diagnostic.c_str());
        break;
      case st::CoverageStatus::kNotCovered:
        std::printf("not covered: %s\n", res.diagnostic.c_str());
        break;
    }
  }
  return res.status == st::CoverageStatus::kCovered ? 0 : 2;
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

int cmd_gen(st::RunConfig cfg, const GlobalOpts& g) {
  const st::GenSpec spec = gen_spec_from_config(cfg);
  const std::string name = cfg.get("file", "function.dump");
  cfg.set("file", name);
  const auto f = st::generate(spec);

  fs::create_directories(g.out_dir);
  std::ostringstream os;
  st::write_dump(os, f, cfg.entries());
  const fs::path path = fs::path(g.out_dir) / name;
  write_text_file(path, os.str());

  if (g.json) {
    nlohmann::json j{{"file", path.string()},
                     {"dim", f.dim()},
                     {"halfwidth", f.halfwidth()},
                     {"terms", st::to_poly(f).term_count()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("wrote %s: d=%d halfwidth=%lld terms=%lld\n", path.string().c_str(), f.dim(),
                static_cast<long long>(f.halfwidth()),
                static_cast<long long>(st::to_poly(f).term_count()));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// approx
// ---------------------------------------------------------------------------

int cmd_approx(st::RunConfig cfg, const GlobalOpts& g) {
  ensure_default(cfg, "scheme", "greedy");
  ensure_default(cfg, "m", "16");
  ensure_default(cfg, "p", "2");
  ensure_default(cfg, "q", "4");
  ensure_default(cfg, "r", "1");
  const std::string in = cfg.get_required("in");
  const auto f = read_grid_file(in);
  st::PlanParams pp;
  pp.scheme = parse_scheme(cfg.get_required("scheme"));
  pp.d = f.dim();
  pp.p = cfg.get_real("p", 2.0);
  pp.q = cfg.get_real("q", 4.0);
  pp.r = cfg.get_real("r", 1.0);
  const st::Index m = cfg.get_index("m", 16);

  const auto a = st::build_approximant(f, pp, m);

  fs::create_directories(g.out_dir);
  const std::string prefix = cfg.get("file", "approximant");
  std::ostringstream os;
  st::write_dump(os, a.poly, cfg.entries());
  write_text_file(fs::path(g.out_dir) / (prefix + ".dump"), os.str());
  nlohmann::json sidecar = st::approximant_sidecar(a);
  write_text_file(fs::path(g.out_dir) / (prefix + ".json"), sidecar.dump(2) + "\n");

  const std::string target = cfg.get("target", "");
  double err = -1;
  if (!target.empty()) {
    const st::SpaceParams sp(cfg.get_real("q", 4.0), parse_target_mode(target));
    err = st::approx_error(f, a, sp);
  }
  if (g.json) {
    if (err >= 0) sidecar["error"] = err;
    std::cout << sidecar.dump(2) << "\n";
  } else {
    std::printf("scheme=%s m=%lld terms=%lld\n", st::scheme_name(a.scheme()),
                static_cast<long long>(m), static_cast<long long>(a.poly.term_count()));
    if (err >= 0) std::printf("error = %.12g\n", err);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// norm
// ---------------------------------------------------------------------------

int cmd_norm(st::RunConfig cfg, const GlobalOpts& g) {
  const std::string in = cfg.get_required("in");
  const auto f = read_grid_file(in);
  const st::BlockMode mode = parse_block_mode(cfg.get("mode", "vp"));

  nlohmann::json j{{"in", in}, {"mode", st::block_mode_name(mode)}};
  j["l1"] = st::lp_norm(f, 1.0);
  j["l2"] = st::lp_norm(f, 2.0);
  j["linf"] = st::lp_norm(f, st::kInf);
  if (cfg.has("lp")) {
    j["lp"] = st::lp_norm(f, cfg.get_real("lp", 2.0));
    j["lp_p"] = cfg.get("lp", "");
  }
  if (cfg.has("r")) {
    const st::ClassParams cp(f.dim(), cfg.get_real("r", 1.0), cfg.get_real("p", 2.0),
                             cfg.get_real("theta", st::kInf));
    j["besov"] = st::besov_norm(f, cp, mode);
    // the two block families are equivalent norms for 1 < p < inf; report
    // the measured ratio rather than assuming a constant
    if (cp.p > 1.0 && cp.p < st::kInf) {
      const double vp = st::besov_norm(f, cp, st::BlockMode::kVp);
      const double sharp = st::besov_norm(f, cp, st::BlockMode::kSharp);
      j["besov_vp"] = vp;
      j["besov_sharp"] = sharp;
      j["vp_sharp_ratio"] = sharp > 0 ? vp / sharp : 0.0;
    }
  }
  if (cfg.has("q")) {
    j["bq1"] = st::bq1_norm(f, cfg.get_real("q", 2.0), mode);
  }
  if (g.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& [key, value] : j.items()) {
      if (value.is_number()) std::printf("%s = %.12g\n", key.c_str(), value.get<double>());
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// rates
// ---------------------------------------------------------------------------

int cmd_rates(st::RunConfig cfg, const GlobalOpts& g) {
  // effective configuration, echoed into every artifact
  ensure_default(cfg, "scheme", "univariate");
  ensure_default(cfg, "target", "bq1");
  ensure_default(cfg, "q", "inf");
  ensure_default(cfg, "m_grid", "16,32,64,128,256,512");
  ensure_default(cfg, "seeds", "5");
  ensure_default(cfg, "tolerance", "0.3");
  ensure_default(cfg, "drop_smallest_octave", "true");
  ensure_default(cfg, "steep_margin", "1");

  const st::GenSpec base = gen_spec_from_config(cfg);
  const st::Scheme scheme = parse_scheme(cfg.get_required("scheme"));
  const st::TargetMode mode = parse_target_mode(cfg.get_required("target"));
  const double q = cfg.get_real("q", st::kInf);
  const st::SpaceParams sp(q, mode);
  const std::vector<st::Index> m_grid =
      cfg.get_index_list("m_grid", {16, 32, 64, 128, 256, 512});
  const int n_seeds = static_cast<int>(cfg.get_index("seeds", 5));
  st::RateOptions opts;
  opts.tolerance = cfg.get_real("tolerance", 0.3);
  opts.drop_smallest_octave = cfg.get_bool("drop_smallest_octave", true);
  opts.steep_margin = cfg.get_real("steep_margin", 1.0);

  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < n_seeds; ++i) {
    seeds.push_back(st::role_seed(base.seed, "rates/replicate/" + std::to_string(i)));
  }

  std::vector<std::vector<double>> per_seed;
  const st::RateReport report =
      st::run_rate_experiment_median(base, scheme, sp, m_grid, seeds, opts, &per_seed);

  // CSV: per-seed rows then the median rows
  std::vector<st::RateCsvRow> rows;
  const std::string space = st::space_label(sp);
  for (std::size_t si = 0; si < seeds.size(); ++si) {
    for (std::size_t mi = 0; mi < m_grid.size(); ++mi) {
      rows.push_back(st::RateCsvRow{m_grid[mi], per_seed[si][mi], st::scheme_name(scheme),
                                    space, std::to_string(seeds[si])});
    }
  }
  for (const auto& pt : report.points) {
    rows.push_back(st::RateCsvRow{pt.m, pt.error, st::scheme_name(scheme), space, "median"});
  }

  fs::create_directories(g.out_dir);
  std::ostringstream csv;
  st::write_rates_csv(csv, rows, cfg.entries());
  write_text_file(fs::path(g.out_dir) / "rates.csv", csv.str());
  write_text_file(fs::path(g.out_dir) / "rates.json",
                  st::report_to_json(report, cfg.entries()).dump(2) + "\n");

  if (g.json) {
    std::cout << st::report_to_json(report, cfg.entries()).dump(2) << "\n";
  } else {
    std::printf("scheme=%s space=%s points=%zu\n", st::scheme_name(scheme), space.c_str(),
                report.points.size());
    if (report.fitted) {
      std::printf("fitted slope = %.4f, predicted exponent = %.4f, tolerance = %.2f\n",
                  report.fit.slope, report.theory.exponent, opts.tolerance);
    }
    std::printf("verdict: %s\n", st::verdict_name(report.verdict));
    for (const auto& w : report.warnings) std::printf("warning: %s\n", w.c_str());
  }
  return st::verdict_passes(report.verdict) ? 0 : 1;
}

// ---------------------------------------------------------------------------
// oracle
// ---------------------------------------------------------------------------

int cmd_oracle(st::RunConfig cfg, const GlobalOpts& g) {
  st::CoeffGrid<double> f(1, 1);
  if (cfg.has("in")) {
    f = read_grid_file(cfg.get_required("in"));
  } else {
    const st::Index n = cfg.get_index("n", 10);
    const st::Index halfwidth = cfg.get_index("halfwidth", 8);
    const std::uint64_t seed = cfg.get_u64("seed", 1);
    auto rng = st::substream(seed, "oracle/instance");
    st::TrigPoly<double> poly(1);
    while (poly.term_count() < n) {
      const int k = static_cast<int>(
          static_cast<st::Index>(rng() % static_cast<std::uint64_t>(2 * halfwidth + 1)) -
          halfwidth);
      const double mag = 0.1 + st::uniform_unit(rng);
      const double phase = 2.0 * std::numbers::pi * st::uniform_unit(rng);
      poly.set_term(st::FreqIndex{k}, std::polar(mag, phase));
    }
    f = st::to_grid(poly);
  }

  const double q = cfg.get_real("q", 4.0);
  const st::SpaceParams l2(2.0, st::TargetMode::kLq);
  const st::SpaceParams bq1(q, st::TargetMode::kBq1);
  const st::Index n = st::to_poly(f).term_count();

  nlohmann::json table = nlohmann::json::array();
  if (!g.json) {
    std::printf("%4s  %14s  %14s  %6s  %14s  %14s  %8s\n", "m", "oracle_l2", "greedy_l2",
                "equal", "oracle_bq1", "greedy_bq1", "greedy>=");
  }
  bool all_equal = true;
  bool all_dominated = true;
  for (st::Index m = 0; m <= n; ++m) {
    const auto o2 = st::oracle_best_mterm(f, m, l2);
    const auto ob = st::oracle_best_mterm(f, m, bq1);
    const double g2 = st::approx_error(f, st::greedy_baseline(f, m), l2);
    const double gb = st::approx_error(f, st::greedy_baseline(f, m), bq1);
    const bool equal = std::abs(g2 - o2.error) <= 1e-10;
    const bool dominated = gb >= ob.error - 1e-10;
    all_equal = all_equal && equal;
    all_dominated = all_dominated && dominated;
    if (g.json) {
      table.push_back(nlohmann::json{{"m", m},
                                     {"oracle_l2", o2.error},
                                     {"greedy_l2", g2},
                                     {"l2_equal", equal},
                                     {"oracle_bq1", ob.error},
                                     {"greedy_bq1", gb},
                                     {"greedy_dominates", dominated}});
    } else {
      std::printf("%4lld  %14.8e  %14.8e  %6s  %14.8e  %14.8e  %8s\n",
                  static_cast<long long>(m), o2.error, g2, equal ? "yes" : "NO", ob.error, gb,
                  dominated ? "yes" : "NO");
    }
  }
  if (g.json) {
    nlohmann::json j{{"terms", n}, {"q", q}, {"rows", table},
                     {"l2_all_equal", all_equal}, {"bq1_all_dominated", all_dominated}};
    std::cout << j.dump(2) << "\n";
  }
  return all_equal && all_dominated ? 0 : 1;
}

// ---------------------------------------------------------------------------
// dump
// ---------------------------------------------------------------------------

int cmd_dump(st::RunConfig cfg, const GlobalOpts& g) {
  const std::string in = cfg.get_required("in");
  std::ifstream is(in);
  if (!is) throw std::invalid_argument("cannot open dump: " + in);
  std::map<std::string, std::string> meta;
  const auto poly = st::read_dump<double>(is, &meta);
  if (g.json) {
    nlohmann::json j{{"in", in},
                     {"dim", poly.dim()},
                     {"halfwidth", poly.max_abs_freq()},
                     {"terms", poly.term_count()}};
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [key, value] : meta) m[key] = value;
    j["meta"] = m;
    std::cout << j.dump(2) << "\n";
  } else {
    std::ostringstream os;
    st::write_dump(os, poly, meta);
    std::cout << os.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparsetrig: constructive m-term trigonometric approximation lab"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--config", g.config_path, "key = value configuration file");
  app.add_option("--seed", g.seed_text, "base seed (overrides the config file)");
  app.add_option("--out", g.out_dir, "output directory (created if missing)");
  app.add_flag("--json", g.json, "machine-readable output");

  // Subcommand flags mirror config keys; any --key value pair becomes a
  // config override via one shared collector per subcommand.
  std::map<std::string, std::map<std::string, std::string>> overrides;
  const auto add_keys = [&](CLI::App* sub, const std::vector<std::string>& keys) {
    auto& store = overrides[sub->get_name()];
    for (const std::string& key : keys) {
      sub->add_option_function<std::string>(
          "--" + key, [&store, key](const std::string& v) { store[key] = v; });
    }
  };

  CLI::App* exponent = app.add_subcommand("exponent", "print the predicted rate exponent");
  add_keys(exponent, {"quantity", "class", "target", "d", "r", "p", "theta", "q", "alpha"});
  CLI::App* gen = app.add_subcommand("gen", "generate a class representative");
  add_keys(gen, {"kind", "d", "r", "p", "theta", "smax", "level", "alpha", "phi", "K", "file"});
  CLI::App* approx = app.add_subcommand("approx", "build an m-term approximant");
  add_keys(approx, {"in", "scheme", "m", "p", "q", "r", "target", "file"});
  CLI::App* norm = app.add_subcommand("norm", "norms of a dumped function");
  add_keys(norm, {"in", "mode", "r", "p", "theta", "q", "lp"});
  CLI::App* rates = app.add_subcommand("rates", "run a convergence-rate experiment");
  add_keys(rates, {"kind", "d", "r", "p", "theta", "smax", "level", "alpha", "phi", "K",
                   "scheme", "target", "q", "m_grid", "seeds", "tolerance",
                   "drop_smallest_octave", "steep_margin"});
  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive-vs-greedy comparison");
  add_keys(oracle, {"in", "n", "halfwidth", "q"});
  CLI::App* dump = app.add_subcommand("dump", "canonicalize or inspect a dump");
  add_keys(dump, {"in"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    st::RunConfig cfg = load_config(g);
    CLI::App* selected = app.get_subcommands().front();
    for (const auto& [key, value] : overrides[selected->get_name()]) cfg.set(key, value);
    if (selected == exponent) return cmd_exponent(std::move(cfg), g);
    if (selected == gen) return cmd_gen(std::move(cfg), g);
    if (selected == approx) return cmd_approx(std::move(cfg), g);
    if (selected == norm) return cmd_norm(std::move(cfg), g);
    if (selected == rates) return cmd_rates(std::move(cfg), g);
    if (selected == oracle) return cmd_oracle(std::move(cfg), g);
    if (selected == dump) return cmd_dump(std::move(cfg), g);
    std::cerr << "error: no command selected\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
