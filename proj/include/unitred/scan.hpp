#pragma once

// Per-discriminant pipeline, record serialisation and the batch scan.

#include "unitred/cubic.hpp"
#include "unitred/qfield.hpp"
#include "unitred/unary.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

namespace unitred {

using Json = nlohmann::ordered_json;

struct ScanRecord {
  std::int64_t d = 0;
  std::int64_t disc = 0;
  QuadElem unit;
  int unit_norm = 0;
  FieldType type;
  bool unit_reducible = false;
  std::int64_t n_K = 0;
  bool minkowski = false;
  std::vector<QuadElem> class_reps;
  std::optional<Witness> witness;
  std::int64_t elapsed_ms = 0;
  std::vector<std::string> inconsistencies;

  bool consistent() const { return inconsistencies.empty(); }
};

struct ClassifyOptions {
  bool timing = false;
};

// Runs every decision procedure for one d and cross-checks them.
inline ScanRecord classify(std::int64_t d, const ClassifyOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  const QuadField F(d);
  ScanRecord rec;
  rec.d = d;
  rec.disc = F.disc();
  rec.unit = F.unit();
  rec.unit_norm = F.norm(F.unit()) == 1 ? 1 : -1;
  rec.type = classify_type(d);
  rec.minkowski = minkowski_quadratic_predicate(F);
  rec.witness = find_nonunit_witness(F);
  rec.unit_reducible = !rec.witness.has_value();
  const ClassGraph graph = enumerate_perfect_classes(F);
  rec.n_K = static_cast<std::int64_t>(graph.n_K);
  for (const PerfectClass& c : graph.classes) rec.class_reps.push_back(c.representative.a);

  const bool typed = rec.type.tag != FieldTag::None;
  if (typed != rec.unit_reducible) rec.inconsistencies.push_back("type tag disagrees with the witness search");
  if (typed != (rec.n_K == 1)) rec.inconsistencies.push_back("type tag disagrees with n_K");
  if (rec.minkowski && !rec.witness) rec.inconsistencies.push_back("Minkowski predicate holds but no witness found");
  if (rec.witness) {
    const Witness& w = *rec.witness;
    if (!in_reduction_domain(UnaryForm(F, w.a)) || F.is_unit(w.x) || !F.is_integral(w.x) ||
        !(trace_value(F, w.a, w.x) < trace(w.a))) {
      rec.inconsistencies.push_back("witness does not certify non-reducibility");
    }
  }
  if (opts.timing) {
    rec.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }
  return rec;
}

inline Json quad_pair_json(const QuadElem& a) {
  return Json::array({to_fraction_string(a.x1), to_fraction_string(a.x2)});
}

inline Json to_json(const ScanRecord& r) {
  Json j;
  j["d"] = r.d;
  j["disc"] = r.disc;
  j["unit"] = quad_pair_json(r.unit);
  j["unit_norm"] = r.unit_norm;
  j["type"] = tag_name(r.type.tag);
  if (r.type.tag != FieldTag::None) j["m"] = r.type.m;
  j["unit_reducible"] = r.unit_reducible;
  j["n_K"] = r.n_K;
  j["minkowski"] = r.minkowski;
  Json reps = Json::array();
  for (const QuadElem& a : r.class_reps) reps.push_back(quad_pair_json(a));
  j["class_reps"] = reps;
  j["witness"] = r.witness ? Json::array({quad_pair_json(r.witness->a), quad_pair_json(r.witness->x)}) : Json(nullptr);
  j["elapsed_ms"] = r.elapsed_ms;
  if (!r.inconsistencies.empty()) j["inconsistencies"] = r.inconsistencies;
  return j;
}

inline const char* csv_header() { return "d,disc,u1,u2,norm,type,unit_reducible,n_K,elapsed_ms"; }

inline std::string to_csv(const ScanRecord& r) {
  return std::to_string(r.d) + "," + std::to_string(r.disc) + "," + to_fraction_string(r.unit.x1) + "," +
         to_fraction_string(r.unit.x2) + "," + std::to_string(r.unit_norm) + "," + tag_name(r.type.tag) + "," +
         (r.unit_reducible ? "true" : "false") + "," + std::to_string(r.n_K) + "," + std::to_string(r.elapsed_ms);
}

enum class OutputFormat { jsonl, csv };

struct ScanOptions {
  std::int64_t max_d = 2;
  OutputFormat format = OutputFormat::jsonl;
  unsigned jobs = 1;
  bool timing = false;
};

struct ScanSummary {
  std::int64_t processed = 0;
  std::map<std::string, std::int64_t> per_type;
  std::map<std::int64_t, std::int64_t> n_K_histogram;
  std::int64_t inconsistent = 0;
};

inline Json to_json(const ScanSummary& s) {
  Json j;
  j["processed"] = s.processed;
  j["per_type"] = Json::object();
  for (const auto& [k, v] : s.per_type) j["per_type"][k] = v;
  j["n_K_histogram"] = Json::object();
  for (const auto& [k, v] : s.n_K_histogram) j["n_K_histogram"][std::to_string(k)] = v;
  j["inconsistent"] = s.inconsistent;
  return j;
}

inline std::vector<std::int64_t> squarefree_up_to(std::int64_t max_d) {
  std::vector<bool> sf(static_cast<std::size_t>(std::max<std::int64_t>(max_d, 1) + 1), true);
  for (std::int64_t p = 2; p * p <= max_d; ++p) {
    for (std::int64_t k = p * p; k <= max_d; k += p * p) sf[static_cast<std::size_t>(k)] = false;
  }
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d <= max_d; ++d) {
    if (sf[static_cast<std::size_t>(d)]) out.push_back(d);
  }
  return out;
}

// Workers classify square-free d in parallel; this thread writes records in
// increasing d as soon as each prefix is complete.
inline ScanSummary scan(const ScanOptions& opts, std::ostream& out) {
  if (opts.max_d < 2) throw std::invalid_argument("scan: max_d must be >= 2");
  const std::vector<std::int64_t> ds = squarefree_up_to(opts.max_d);
  std::vector<std::optional<ScanRecord>> results(ds.size());
  std::exception_ptr failure;
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};

  const unsigned jobs = std::max(1u, opts.jobs);
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= ds.size()) return;
        try {
          ScanRecord rec = classify(ds[i], {opts.timing});
          std::lock_guard lock(mu);
          results[i] = std::move(rec);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!failure) failure = std::current_exception();
          next = ds.size();
        }
        cv.notify_all();
      }
    });
  }

  ScanSummary summary;
  if (opts.format == OutputFormat::csv) out << csv_header() << '\n';
  for (std::size_t i = 0; i < ds.size(); ++i) {
    ScanRecord rec;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return results[i].has_value() || failure != nullptr; });
      if (failure && !results[i]) break;
      rec = std::move(*results[i]);
      results[i].reset();
    }
    if (opts.format == OutputFormat::jsonl) {
      out << to_json(rec).dump() << '\n';
    } else {
      out << to_csv(rec) << '\n';
    }
    ++summary.processed;
    ++summary.per_type[tag_name(rec.type.tag)];
    ++summary.n_K_histogram[rec.n_K];
    summary.inconsistent += rec.consistent() ? 0 : 1;
  }
  for (std::thread& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
  out.flush();
  return summary;
}

inline Json to_json(const AppendixReport& r) {
  Json j;
  j["t"] = r.t;
  j["monogenic"] = r.monogenic;
  Json ids = Json::array();
  for (const IdentityCheck& c : r.identities) {
    ids.push_back(Json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
  }
  j["identities"] = ids;
  j["n_K"] = r.n_K;
  return j;
}

struct CubicSummary {
  std::int64_t monogenic = 0;
  std::int64_t skipped = 0;
  std::int64_t passed = 0;
  std::int64_t failed = 0;
};

inline Json to_json(const CubicSummary& s) {
  return Json{{"monogenic", s.monogenic}, {"skipped", s.skipped}, {"passed", s.passed}, {"failed", s.failed}};
}

// One JSON line per t <= t_max: the full report for monogenic t, a stub
// otherwise.
inline CubicSummary cubic_report(std::int64_t t_max, std::ostream& out) {
  if (t_max < 0) throw std::invalid_argument("cubic_report: t_max must be >= 0");
  CubicSummary s;
  for (std::int64_t t = 0; t <= t_max; ++t) {
    const SimplestCubicField F(t);
    if (!is_monogenic(F)) {
      ++s.skipped;
      out << Json{{"t", t}, {"monogenic", false}}.dump() << '\n';
      continue;
    }
    ++s.monogenic;
    const AppendixReport rep = verify_appendix(t);
    const bool ok = rep.all_pass() && rep.n_K == 2;
    ok ? ++s.passed : ++s.failed;
    out << to_json(rep).dump() << '\n';
  }
  out.flush();
  return s;
}

}  // namespace unitred
