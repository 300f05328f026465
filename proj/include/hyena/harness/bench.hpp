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


#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hyena/errors.hpp"
#include "hyena/harness/verify.hpp"
#include "hyena/params/calibrate.hpp"
#include "hyena/params/cost_model.hpp"

namespace hyena::harness {

/// Latency variants: (a) conventional, (b) conventional without hoisting, (c) hyena with neither
/// parameter selection nor lazy reduction, (d) hyena with parameter selection, (e) everything.
enum class Variant { a, b, c, d, e };

inline const std::vector<Variant>& all_variants() {
  static const std::vector<Variant> v = {Variant::a, Variant::b, Variant::c, Variant::d, Variant::e};
  return v;
}

inline char to_char(Variant v) { return static_cast<char>('a' + static_cast<int>(v)); }

inline Variant parse_variant(const std::string& s) {
  if (s.size() == 1 && s[0] >= 'a' && s[0] <= 'e') return static_cast<Variant>(s[0] - 'a');
  throw std::invalid_argument("unknown variant '" + s + "' (expected a-e)");
}

struct VariantFlags {
  conv::Algo algo = conv::Algo::hyena;
  bool hoisting = true;
  bool param_select = false;
  bool lazy = false;
};

inline VariantFlags flags_of(Variant v) {
  switch (v) {
    case Variant::a: return {conv::Algo::conventional, true, false, false};
    case Variant::b: return {conv::Algo::conventional, false, false, false};
    case Variant::c: return {conv::Algo::hyena, true, false, false};
    case Variant::d: return {conv::Algo::hyena, true, true, false};
    case Variant::e: return {conv::Algo::hyena, true, true, true};
  }
  return {};
}

struct BenchOptions {
  std::size_t reps = 3;
  u64 seed = 1;
  std::size_t threads = 1;
  int conventional_digits = 2;
  u64 k_max = params::kDefaultKMax;
  double guard_bits = 4.0;
  bool sparse_sign = false;
};

struct BenchRow {
  conv::LayerSpec spec;
  std::size_t n = 0;
  Variant variant = Variant::a;
  VariantFlags flags;
  int base_bits = 0;
  u64 k = 1;
  int digits = 1;
  std::size_t reps = 0;
  double seconds = 0;
  double seconds_rotate = 0;
  double seconds_accumulate = 0;
  double normalized = 0;
  bfv::OpCounts counts;
  std::size_t model_bytes = 0;
  std::size_t key_bytes = 0;
  std::size_t input_bytes = 0;
  double noise_bits = 0;
  double margin_bits = 0;
  std::string status;
};

inline double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// Runs the requested variants of one layer; normalization is against variant (a) when present.
inline std::vector<BenchRow> bench_layer(const Session& s, const conv::LayerSpec& spec, const std::vector<Variant>& variants,
                                         const BenchOptions& opt = {}) {
  const auto& rp = s.rp;
  const conv::Layout lay(rp.n, spec.H, spec.W);
  u64 k_sel = 1;
  if (const auto h = params::compute_h(rp.p.value(), rp.n)) k_sel = params::find_k(rp.p.value(), *h, opt.k_max).k;

  std::optional<int> w_conv, w_hyena, w_unit;
  auto conventional_base = [&] {
    if (!w_conv) {
      params::CalibrationOptions co{opt.conventional_digits, 1, opt.guard_bits, opt.seed, 256};
      w_conv = params::select_dcmp_base(s, spec, conv::Algo::conventional, co);
    }
    return *w_conv;
  };
  auto hyena_base = [&] {
    if (!w_hyena) {
      params::CalibrationOptions co{1, k_sel, opt.guard_bits, opt.seed, 256};
      w_hyena = params::select_dcmp_base(s, spec, conv::Algo::hyena, co);
    }
    return *w_hyena;
  };
  auto unselected_base = [&] {
    if (!w_unit) {
      params::CalibrationOptions co{1, 1, opt.guard_bits, opt.seed, 256};
      w_unit = std::min(conventional_base(), params::select_dcmp_base(s, spec, conv::Algo::hyena, co));
    }
    return *w_unit;
  };

  std::vector<BenchRow> rows;
  for (Variant v : variants) {
    BenchRow row;
    row.spec = spec;
    row.n = rp.n;
    row.variant = v;
    row.flags = flags_of(v);
    const bool conventional = row.flags.algo == conv::Algo::conventional;
    row.digits = conventional ? opt.conventional_digits : 1;
    row.k = row.flags.param_select && lay.cn > 1 ? k_sel : 1;
    try {
      row.base_bits = conventional ? conventional_base() : row.flags.param_select ? hyena_base() : unselected_base();
    } catch (const InfeasibleError&) {
      row.status = "infeasible";
      rows.push_back(row);
      continue;
    }
    RunConfig cfg;
    cfg.spec = spec;
    cfg.algo = row.flags.algo;
    cfg.base_bits = row.base_bits;
    cfg.digits = row.digits;
    cfg.k = row.k;
    cfg.opt.hoisting = row.flags.hoisting;
    cfg.opt.lazy = row.flags.lazy;
    cfg.opt.sparse_sign = opt.sparse_sign;
    cfg.opt.threads = opt.threads;
    cfg.seed = opt.seed;
    const auto keys = bfv::galois_keygen(rp, s.sk, conv::required_elements(cfg.algo, spec, lay), cfg.base_bits, opt.seed * 31 + 7);
    std::vector<double> total, rot, acc;
    bool ok = true;
    for (std::size_t r = 0; r < std::max<std::size_t>(1, opt.reps); ++r) {
      const auto out = run_layer(s, cfg, &keys);
      ok = ok && out.pass;
      total.push_back(out.result.seconds_rotate + out.result.seconds_accumulate);
      rot.push_back(out.result.seconds_rotate);
      acc.push_back(out.result.seconds_accumulate);
      row.counts = out.result.counts;
      row.noise_bits = out.noise_bits;
      row.margin_bits = out.margin_bits;
      row.key_bytes = out.key_bytes;
    }
    row.reps = total.size();
    row.seconds = median(total);
    row.seconds_rotate = median(rot);
    row.seconds_accumulate = median(acc);
    const auto cost = params::cost_model(spec, row.flags.algo, rp.n, rp.q.bit_count(), row.base_bits, row.digits);
    row.model_bytes = cost.model_bytes;
    row.input_bytes = cost.input_bytes;
    row.status = ok ? "ok" : "mismatch";
    rows.push_back(row);
  }
  double base = 0;
  for (const auto& r : rows)
    if (r.variant == Variant::a && r.status == "ok") base = r.seconds;
  for (auto& r : rows) r.normalized = base > 0 && r.seconds > 0 ? r.seconds / base : 0;
  return rows;
}

inline const char* kBenchCsvHeader =
    "layer,H,W,C_in,C_out,f,n,variant,algo,hoisting,param_select,lazy,base_bits,k,digits,reps,seconds,seconds_rotate,"
    "seconds_accumulate,normalized,decompositions,rotations,pmults,cmults,lazy_macs,reductions,hadds,model_bytes,key_bytes,"
    "input_bytes,noise_bits,margin_bits,status";

inline void write_csv_row(std::ostream& os, const BenchRow& r) {
  const auto& s = r.spec;
  os << s.str() << ',' << s.H << ',' << s.W << ',' << s.C_in << ',' << s.C_out << ',' << s.f << ',' << r.n << ','
     << to_char(r.variant) << ',' << conv::to_string(r.flags.algo) << ',' << r.flags.hoisting << ',' << r.flags.param_select
     << ',' << r.flags.lazy << ',' << r.base_bits << ',' << r.k << ',' << r.digits << ',' << r.reps << ',' << r.seconds << ','
     << r.seconds_rotate << ',' << r.seconds_accumulate << ',' << r.normalized << ',' << r.counts.decompositions << ','
     << r.counts.rotations << ',' << r.counts.pmults << ',' << r.counts.cmults << ',' << r.counts.lazy_macs << ','
     << r.counts.reductions << ',' << r.counts.hadds << ',' << r.model_bytes << ',' << r.key_bytes << ',' << r.input_bytes
     << ',' << r.noise_bits << ',' << r.margin_bits << ',' << r.status << '\n';
}

}  // namespace hyena::harness
