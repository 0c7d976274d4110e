#pragma once

// Deterministic serialization. Every floating-point value is written with 17
// significant digits so payloads round-trip exactly and regression baselines
// can be compared byte for byte. File outputs carry a metadata header
// (command, resolved parameters, version, seed, timestamp); the payload that
// follows is a pure function of the metadata minus the timestamp. In CSV
// files the metadata is a single leading '#' comment line; JSON documents
// hold {"metadata": ..., "payload": ...}.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "chiral/disorder.hpp"
#include "chiral/dynamics.hpp"
#include "chiral/ring.hpp"
#include "chiral/version.hpp"

namespace chiral::io {

using nlohmann::json;

// Shortest decimal form that parses back to the identical double.
inline std::string fmt17(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string utc_timestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline json metadata(const std::string& command, const json& params,
                     std::uint64_t seed) {
  return json{{"command", command},
              {"parameters", params},
              {"version", kVersion},
              {"seed", seed},
              {"timestamp", utc_timestamp()}};
}

inline json envelope(const std::string& command, const json& params,
                     std::uint64_t seed, json payload) {
  return json{{"metadata", metadata(command, params, seed)},
              {"payload", std::move(payload)}};
}

inline void write_metadata_comment(std::ostream& os, const json& meta) {
  os << "# " << meta.dump() << "\n";
}

// --- trajectories ----------------------------------------------------------

// Header `t,p1,...,pN` (or another per-site prefix), one row per sample.
inline void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                                 const std::string& prefix = "p") {
  os << "t";
  for (Eigen::Index c = 0; c < traj.records.cols(); ++c) {
    os << "," << prefix << (c + 1);
  }
  os << "\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    os << fmt17(traj.times[i]);
    for (Eigen::Index c = 0; c < traj.records.cols(); ++c) {
      os << "," << fmt17(traj.records(static_cast<Eigen::Index>(i), c));
    }
    os << "\n";
  }
}

// Two trajectories on a shared time grid (exact vs effective comparison).
inline void write_paired_trajectory_csv(std::ostream& os, const Trajectory& a,
                                        const Trajectory& b,
                                        const std::string& prefix_a,
                                        const std::string& prefix_b) {
  os << "t";
  for (Eigen::Index c = 0; c < a.records.cols(); ++c) os << "," << prefix_a << (c + 1);
  for (Eigen::Index c = 0; c < b.records.cols(); ++c) os << "," << prefix_b << (c + 1);
  os << "\n";
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    os << fmt17(a.times[i]);
    for (Eigen::Index c = 0; c < a.records.cols(); ++c) {
      os << "," << fmt17(a.records(static_cast<Eigen::Index>(i), c));
    }
    for (Eigen::Index c = 0; c < b.records.cols(); ++c) {
      os << "," << fmt17(b.records(static_cast<Eigen::Index>(i), c));
    }
    os << "\n";
  }
}

// --- ring Hamiltonians ------------------------------------------------------

inline std::string convention_name(PhaseConvention c) {
  return c == PhaseConvention::AsDerived ? "as-derived" : "uniform-half-pi";
}

inline PhaseConvention convention_from_name(const std::string& name) {
  if (name == "as-derived") return PhaseConvention::AsDerived;
  if (name == "uniform-half-pi") return PhaseConvention::UniformHalfPi;
  throw std::invalid_argument("unknown phase convention: " + name);
}

// {N, J, convention, entries}: entries are row-major [re, im] pairs and
// round-trip bit-exactly at double precision.
inline json ring_to_json(const ChiralRingHamiltonian& ring) {
  json entries = json::array();
  for (Eigen::Index r = 0; r < ring.matrix.rows(); ++r) {
    for (Eigen::Index c = 0; c < ring.matrix.cols(); ++c) {
      entries.push_back({ring.matrix(r, c).real(), ring.matrix(r, c).imag()});
    }
  }
  return json{{"N", ring.spec.sites},
              {"J", ring.spec.hopping},
              {"convention", convention_name(ring.convention)},
              {"entries", std::move(entries)}};
}

inline ChiralRingHamiltonian ring_from_json(const json& doc) {
  const int sites = doc.at("N").get<int>();
  const double hopping = doc.at("J").get<double>();
  const auto convention = convention_from_name(doc.at("convention").get<std::string>());
  const auto& entries = doc.at("entries");
  if (static_cast<int>(entries.size()) != sites * sites) {
    throw std::invalid_argument("ring_from_json: entry count does not match N^2");
  }
  Matrix h(sites, sites);
  int i = 0;
  for (Eigen::Index r = 0; r < sites; ++r) {
    for (Eigen::Index c = 0; c < sites; ++c, ++i) {
      h(r, c) = Complex(entries[i][0].get<double>(), entries[i][1].get<double>());
    }
  }
  return {RingSpec(sites, hopping), std::move(h), convention};
}

// --- disorder sweeps --------------------------------------------------------

inline void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  os << "strength,mean,lo,hi,clamped_count\n";
  for (std::size_t i = 0; i < sweep.axis.size(); ++i) {
    os << fmt17(sweep.axis[i]) << "," << fmt17(sweep.mean[i]) << ","
       << fmt17(sweep.lo[i]) << "," << fmt17(sweep.hi[i]) << ","
       << sweep.clamped[i] << "\n";
  }
}

// Full per-realization fidelity matrix, one row per axis point.
inline json sweep_matrix_to_json(const SweepResult& sweep) {
  json rows = json::array();
  for (Eigen::Index a = 0; a < sweep.fidelities.rows(); ++a) {
    json row = json::array();
    for (Eigen::Index r = 0; r < sweep.fidelities.cols(); ++r) {
      row.push_back(sweep.fidelities(a, r));
    }
    rows.push_back(std::move(row));
  }
  return json{{"axis", sweep.axis}, {"fidelities", std::move(rows)}};
}

}  // namespace chiral::io
