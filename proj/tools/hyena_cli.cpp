// Copyright 2026 The Hyena Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyena/hyena.hpp"

#ifndef HYENA_DATA_DIR
#define HYENA_DATA_DIR "data"
#endif

using json = nlohmann::json;
using namespace hyena;

namespace {

struct Common {
  u64 seed = 1;
  bool as_json = false;
  std::string data_dir = HYENA_DATA_DIR;
};

u64 effective_seed(u64 flag) {
  if (const char* env = std::getenv("HYENA_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("HYENA_SEED is not an integer: ") + env);
    }
  }
  return flag;
}

std::vector<harness::LayerEntry> gather_layers(const std::vector<std::string>& layers, const std::vector<std::string>& networks,
                                               const std::string& data_dir) {
  std::vector<harness::LayerEntry> out;
  for (const auto& l : layers) out.push_back(harness::parse_layer(l));
  for (const auto& n : networks) {
    const auto net = harness::load_network(n, data_dir);
    out.insert(out.end(), net.begin(), net.end());
  }
  return out;
}

std::vector<conv::Algo> parse_algos(const std::string& s) {
  if (s == "all") return {conv::Algo::conventional, conv::Algo::padded, conv::Algo::hyena};
  std::vector<conv::Algo> out;
  std::stringstream ss(s);
  for (std::string a; std::getline(ss, a, ',');) out.push_back(conv::parse_algo(a));
  return out;
}

json counts_json(const bfv::OpCounts& c) {
  return {{"decompositions", c.decompositions}, {"rotations", c.rotations}, {"pmults", c.pmults}, {"cmults", c.cmults},
          {"lazy_macs", c.lazy_macs},           {"reductions", c.reductions}, {"hadds", c.hadds}};
}

// ---- params ----

struct ParamsArgs {
  std::size_t n = 2048;
  int p_bits = 19, q_bits = 60;
  u64 k_max = params::kDefaultKMax;
};

int cmd_params(const ParamsArgs& a, const Common& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = params::search(a.n, a.p_bits, a.q_bits, a.k_max);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (c.as_json) {
    std::cout << json{{"n", r.n},
                      {"p", r.p},
                      {"q", r.q},
                      {"h", r.h},
                      {"k", r.k},
                      {"residue", r.residue},
                      {"forecast_dense_bits", r.forecast_dense_bits},
                      {"forecast_sign_k1_bits", r.forecast_sign_k1_bits},
                      {"forecast_sign_bits", r.forecast_sign_bits},
                      {"seconds", secs}}
                     .dump(2)
              << "\n";
    return 0;
  }
  std::cout << "n=" << r.n << "\np=" << r.p << "\nq=" << r.q << "\nh=" << r.h << "\nk=" << r.k << "\nresidue=" << r.residue
            << "\nforecast_dense_bits=" << r.forecast_dense_bits << "\nforecast_sign_k1_bits=" << r.forecast_sign_k1_bits
            << "\nforecast_sign_bits=" << r.forecast_sign_bits << "\nseconds=" << secs << "\n";
  return 0;
}

// ---- verify ----

struct VerifyArgs {
  std::size_t n = 0;
  int p_bits = 12, q_bits = 60, base_bits = 6, digits = 1;
  std::vector<std::string> layers, networks;
  std::string algo = "all";
  std::vector<std::string> opt = {"hoisting", "lazy"};
  std::size_t threads = 1;
  bool fault = false;
};

int cmd_verify(const VerifyArgs& a, const Common& c) {
  std::vector<harness::MatrixCase> cases;
  std::vector<conv::Algo> own;
  const auto entries = gather_layers(a.layers, a.networks, c.data_dir);
  if (entries.empty()) {
    cases = harness::verification_matrix();
    if (a.n) std::erase_if(cases, [&](const auto& m) { return m.n != a.n; });
  } else {
    for (const auto& e : entries) {
      cases.push_back({a.n ? a.n : 128, e.spec});
      own.push_back(e.algo);
    }
  }
  conv::ConvOptions opt{false, false, false, a.threads};
  bool param = false;
  for (const auto& o : a.opt) {
    if (o == "hoisting") opt.hoisting = true;
    else if (o == "lazy") opt.lazy = true;
    else if (o == "sparse") opt.sparse_sign = true;
    else if (o == "param") param = true;
    else if (o != "none") throw std::invalid_argument("unknown optimisation '" + o + "'");
  }
  const bool per_layer = a.algo == "layer";
  if (per_layer && own.empty()) throw std::invalid_argument("--algo layer needs --layer or --network");
  const auto all_algos = per_layer ? std::vector<conv::Algo>{} : parse_algos(a.algo);
  std::map<std::size_t, std::unique_ptr<harness::Session>> sessions;
  json report = json::array();
  std::size_t failed = 0, total = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& mc = cases[i];
    const auto algos = per_layer ? std::vector<conv::Algo>{own[i]} : all_algos;
    auto& s = sessions[mc.n];
    if (!s) s = std::make_unique<harness::Session>(mc.n, a.p_bits, a.q_bits, c.seed);
    u64 k = 1;
    if (param) {
      if (const auto h = params::compute_h(s->rp.p.value(), mc.n)) k = params::find_k(s->rp.p.value(), *h).k;
    }
    for (auto algo : algos) {
      harness::RunConfig cfg;
      cfg.spec = mc.spec;
      cfg.algo = algo;
      cfg.base_bits = a.base_bits;
      cfg.digits = a.digits;
      cfg.k = k;
      cfg.opt = opt;
      cfg.seed = c.seed + total;
      cfg.corrupt_kernel = a.fault;
      const auto out = harness::run_layer(*s, cfg);
      ++total;
      if (!out.pass) ++failed;
      if (c.as_json) {
        report.push_back({{"n", mc.n},
                          {"layer", mc.spec.str()},
                          {"algo", conv::to_string(algo)},
                          {"pass", out.pass},
                          {"compared", out.compared},
                          {"mismatches", out.mismatches},
                          {"first_mismatch", out.pass ? json() : json{{"c", out.first_c}, {"y", out.first_y}, {"x", out.first_x}, {"expected", out.expected}, {"got", out.got}}},
                          {"noise_bits", out.noise_bits},
                          {"margin_bits", out.margin_bits},
                          {"counts", counts_json(out.result.counts)}});
      } else {
        std::cout << (out.pass ? "PASS " : "FAIL ") << "n=" << mc.n << ' ' << mc.spec.str() << ' ' << conv::to_string(algo)
                  << ": " << out.describe() << " noise=" << std::fixed << std::setprecision(1) << out.noise_bits << '/'
                  << out.margin_bits << std::defaultfloat << "\n";
      }
    }
  }
  if (c.as_json) std::cout << json{{"cases", report}, {"total", total}, {"failed", failed}}.dump(2) << "\n";
  else std::cout << (total - failed) << " of " << total << " cases match the oracle\n";
  return failed == 0 ? 0 : 1;
}

// ---- bench ----

struct BenchArgs {
  std::size_t n = 2048;
  int p_bits = 19, q_bits = 60;
  std::vector<std::string> layers, networks;
  std::string variants = "a,b,c,d,e";
  std::size_t reps = 3, threads = 1;
  u64 k_max = params::kDefaultKMax;
  double guard = 4.0;
  std::string out;
};

int cmd_bench(const BenchArgs& a, const Common& c) {
  auto entries = gather_layers(a.layers, a.networks, c.data_dir);
  if (entries.empty()) entries = {harness::parse_layer("64,64,3,64,3"), harness::parse_layer("64,64,16,16,3")};
  std::vector<harness::Variant> variants;
  std::stringstream ss(a.variants);
  for (std::string v; std::getline(ss, v, ',');) variants.push_back(harness::parse_variant(v));
  harness::BenchOptions bo;
  bo.reps = a.reps;
  bo.seed = c.seed;
  bo.threads = a.threads;
  bo.k_max = a.k_max;
  bo.guard_bits = a.guard;
  const harness::Session s(a.n, a.p_bits, a.q_bits, c.seed);
  std::vector<harness::BenchRow> rows;
  for (const auto& e : entries) {
    auto r = harness::bench_layer(s, e.spec, variants, bo);
    rows.insert(rows.end(), r.begin(), r.end());
  }
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw std::runtime_error("cannot write " + a.out);
    f << harness::kBenchCsvHeader << "\n";
    for (const auto& r : rows) harness::write_csv_row(f, r);
  }
  if (c.as_json) {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"layer", r.spec.str()},
                     {"n", r.n},
                     {"variant", std::string(1, harness::to_char(r.variant))},
                     {"algo", conv::to_string(r.flags.algo)},
                     {"base_bits", r.base_bits},
                     {"k", r.k},
                     {"digits", r.digits},
                     {"seconds", r.seconds},
                     {"normalized", r.normalized},
                     {"counts", counts_json(r.counts)},
                     {"model_bytes", r.model_bytes},
                     {"key_bytes", r.key_bytes},
                     {"input_bytes", r.input_bytes},
                     {"noise_bits", r.noise_bits},
                     {"margin_bits", r.margin_bits},
                     {"status", r.status}});
    std::cout << arr.dump(2) << "\n";
  } else {
    std::cout << std::left << std::setw(20) << "layer" << std::setw(4) << "var" << std::setw(14) << "algo" << std::setw(5) << "W"
              << std::setw(4) << "k" << std::setw(12) << "seconds" << std::setw(8) << "norm" << std::setw(14) << "noise/margin"
              << "status\n";
    for (const auto& r : rows) {
      std::ostringstream noise;
      noise << std::fixed << std::setprecision(1) << r.noise_bits << '/' << r.margin_bits;
      std::cout << std::setw(20) << r.spec.str() << std::setw(4) << harness::to_char(r.variant) << std::setw(14)
                << conv::to_string(r.flags.algo) << std::setw(5) << r.base_bits << std::setw(4) << r.k << std::setw(12)
                << r.seconds << std::setw(8) << std::setprecision(3) << r.normalized << std::setprecision(6) << std::setw(14)
                << noise.str() << r.status << "\n";
    }
  }
  return 0;
}

// ---- table2 ----

struct Table2Args {
  int q_bits = 60, base_bits = 20;
  std::string out;
};

int cmd_table2(const Table2Args& a, const Common& c) {
  const auto rows = params::table2(a.q_bits, a.base_bits);
  using params::format_size;
  using params::mib;
  if (!a.out.empty()) {
    std::ofstream f(a.out);
    if (!f) throw std::runtime_error("cannot write " + a.out);
    f << "H,C_in,C_out,n,algo,key_bytes,model_bytes,input_bytes\n";
    for (const auto& r : rows)
      for (const auto* cr : {&r.conventional, &r.hyena})
        f << r.spec.H << ',' << r.spec.C_in << ',' << r.spec.C_out << ',' << r.n << ',' << conv::to_string(cr->algo) << ','
          << cr->key_bytes << ',' << cr->model_bytes << ',' << cr->input_bytes << '\n';
  }
  if (c.as_json) {
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"input", {r.spec.H, r.spec.C_in, r.spec.C_out}},
                     {"n", r.n},
                     {"conventional", {{"key_mb", mib(r.conventional.key_bytes)}, {"model_mb", format_size(mib(r.conventional.model_bytes))}, {"input_mb", format_size(mib(r.conventional.input_bytes))}}},
                     {"proposed", {{"key_mb", mib(r.hyena.key_bytes)}, {"model_mb", format_size(mib(r.hyena.model_bytes))}, {"input_mb", format_size(mib(r.hyena.input_bytes))}}},
                     {"model_ratio", r.model_ratio()},
                     {"input_ratio", r.input_ratio()}});
    std::cout << arr.dump(2) << "\n";
    return 0;
  }
  std::cout << std::left << std::setw(18) << "input (H,in,out)" << std::setw(6) << "n" << std::setw(14) << "convolution"
            << std::setw(8) << "key MB" << std::setw(16) << "model MB" << "input ct MB\n";
  for (const auto& r : rows) {
    std::ostringstream shape, km, mm, im;
    shape << '(' << r.spec.H << ", " << r.spec.C_in << ", " << r.spec.C_out << ')';
    std::cout << std::setw(18) << shape.str() << std::setw(6) << r.n << std::setw(14) << "conventional" << std::setw(8)
              << format_size(mib(r.conventional.key_bytes)) << std::setw(16) << format_size(mib(r.conventional.model_bytes))
              << format_size(mib(r.conventional.input_bytes)) << "\n";
    mm << format_size(mib(r.hyena.model_bytes)) << " (" << std::llround(r.model_ratio()) << "x)";
    im << format_size(mib(r.hyena.input_bytes)) << " (" << std::llround(r.input_ratio()) << "x)";
    std::cout << std::setw(18) << "" << std::setw(6) << "" << std::setw(14) << "proposed" << std::setw(8)
              << format_size(mib(r.hyena.key_bytes)) << std::setw(16) << mm.str() << im.str() << "\n";
  }
  return 0;
}

// ---- report ----

struct ReportArgs {
  std::vector<std::string> networks = {"vgg16", "resnet20", "mobilenetv1"};
  int q_bits = 60, base_bits = 20;
};

int cmd_report(const ReportArgs& a, const Common& c) {
  json arr = json::array();
  for (const auto& name : a.networks) {
    const auto layers = harness::load_network(name, c.data_dir);
    std::size_t base_model = 0, base_input = 0, base_key = 0, model = 0, input = 0, key = 0;
    for (const auto& e : layers) {
      const std::size_t n = params::table2_degree(e.spec.H);
      const auto conventional = params::cost_model(e.spec, conv::Algo::conventional, n, a.q_bits, a.base_bits, 2);
      const auto chosen = e.algo == conv::Algo::conventional ? conventional : params::cost_model(e.spec, e.algo, n, a.q_bits, a.base_bits, 2);
      base_model += conventional.model_bytes;
      base_input += conventional.input_bytes;
      base_key += conventional.key_bytes;
      model += chosen.model_bytes;
      input += chosen.input_bytes;
      key += chosen.key_bytes;
    }
    auto ratio = [](std::size_t x, std::size_t b) { return b ? static_cast<double>(x) / static_cast<double>(b) : 0.0; };
    if (c.as_json) {
      arr.push_back({{"network", name},
                     {"layers", layers.size()},
                     {"conventional", {{"model_bytes", base_model}, {"key_bytes", base_key}, {"input_bytes", base_input}}},
                     {"mixed", {{"model_bytes", model}, {"key_bytes", key}, {"input_bytes", input}}},
                     {"normalized_memory", ratio(model + key, base_model + base_key)},
                     {"normalized_communication", ratio(input, base_input)}});
    } else {
      std::cout << name << " (" << layers.size() << " linear layers)\n"
                << "  memory (key+model) MB: conventional " << params::format_size(params::mib(base_model + base_key))
                << ", proposed " << params::format_size(params::mib(model + key)) << " (" << std::setprecision(3)
                << ratio(model + key, base_model + base_key) << "x)\n"
                << "  input ciphertext MB:   conventional " << params::format_size(params::mib(base_input)) << ", proposed "
                << params::format_size(params::mib(input)) << " (" << ratio(input, base_input) << "x)\n"
                << std::setprecision(6);
    }
  }
  if (c.as_json) std::cout << arr.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Encrypted convolution toolkit: parameter search, verification, benchmarks and cost tables"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Random seed (HYENA_SEED overrides)");
    sub->add_flag("--json", common.as_json, "Emit JSON instead of text");
    sub->add_option("--data-dir", common.data_dir, "Directory holding networks/*.txt presets");
  };

  ParamsArgs pa;
  auto* p = app.add_subcommand("params", "Search plaintext/ciphertext primes, sign coefficient h and multiplier k");
  p->add_option("--n", pa.n, "Ring degree")->check(CLI::PositiveNumber);
  p->add_option("--p-bits", pa.p_bits, "Plaintext prime width")->check(CLI::Range(2, 20));
  p->add_option("--q-bits", pa.q_bits, "Ciphertext prime width")->check(CLI::Range(8, 60));
  p->add_option("--k-max", pa.k_max, "Largest multiplier searched")->check(CLI::PositiveNumber);
  add_common(p);

  VerifyArgs va;
  auto* v = app.add_subcommand("verify", "Run encrypted convolutions and compare with the plaintext oracle");
  v->add_option("--n", va.n, "Ring degree (default: the built-in matrix)");
  v->add_option("--p-bits", va.p_bits, "Plaintext prime width");
  v->add_option("--q-bits", va.q_bits, "Ciphertext prime width");
  v->add_option("--base-bits", va.base_bits, "Key-switching decomposition base W")->check(CLI::Range(1, 60));
  v->add_option("--digits", va.digits, "Plaintext decomposition digits for conventional")->check(CLI::Range(1, 2));
  v->add_option("--layer", va.layers, "Layer H,W,C_in,C_out,f[,algo]");
  v->add_option("--network", va.networks, "Network preset name or file");
  v->add_option("--algo", va.algo, "conventional, padded, hyena, a comma list, all, or layer (each layer's own column)");
  v->add_option("--opt", va.opt, "Optimisations: hoisting, lazy, sparse, param, none")->delimiter(',');
  v->add_option("--threads", va.threads, "Worker threads")->check(CLI::PositiveNumber);
  v->add_flag("--fault", va.fault, "Flip one kernel bit after computing the reference");
  add_common(v);

  BenchArgs ba;
  auto* b = app.add_subcommand("bench", "Time the latency variants a-e per layer");
  b->add_option("--n", ba.n, "Ring degree");
  b->add_option("--p-bits", ba.p_bits, "Plaintext prime width");
  b->add_option("--q-bits", ba.q_bits, "Ciphertext prime width");
  b->add_option("--layer", ba.layers, "Layer H,W,C_in,C_out,f[,algo]");
  b->add_option("--network", ba.networks, "Network preset name or file");
  b->add_option("--opt", ba.variants, "Variants to run, e.g. a,e");
  b->add_option("--reps", ba.reps, "Repetitions; the median is reported")->check(CLI::PositiveNumber);
  b->add_option("--threads", ba.threads, "Worker threads")->check(CLI::PositiveNumber);
  b->add_option("--k-max", ba.k_max, "Largest multiplier searched")->check(CLI::PositiveNumber);
  b->add_option("--guard", ba.guard, "Spare noise bits required when calibrating W");
  b->add_option("--out", ba.out, "CSV output path");
  add_common(b);

  Table2Args ta;
  auto* t = app.add_subcommand("table2", "Memory and input ciphertext sizes for the reference layer set");
  t->add_option("--q-bits", ta.q_bits, "Ciphertext prime width used for key sizes");
  t->add_option("--base-bits", ta.base_bits, "Decomposition base used for key sizes");
  t->add_option("--out", ta.out, "CSV output path");
  add_common(t);

  ReportArgs ra;
  auto* r = app.add_subcommand("report", "Per-network linear-layer memory and communication totals");
  r->add_option("--network", ra.networks, "Network preset names or files");
  r->add_option("--q-bits", ra.q_bits, "Ciphertext prime width used for key sizes");
  r->add_option("--base-bits", ra.base_bits, "Decomposition base used for key sizes");
  add_common(r);

  CLI11_PARSE(app, argc, argv);
  try {
    common.seed = effective_seed(common.seed);
    if (*p) return cmd_params(pa, common);
    if (*v) return cmd_verify(va, common);
    if (*b) return cmd_bench(ba, common);
    if (*t) return cmd_table2(ta, common);
    if (*r) return cmd_report(ra, common);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
