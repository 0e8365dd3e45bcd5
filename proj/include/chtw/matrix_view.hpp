#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chtw/dynamics.hpp"

namespace chtw {

using BinaryMatrix = std::vector<std::vector<int>>;

/// S_H [dim C x dim T] and S_W [dim T x dim C] in declaration order. S_H
/// includes blocking and associative connections.
struct ConnectivityMatrices {
  std::vector<std::string> c_order;
  std::vector<std::string> t_order;
  BinaryMatrix s_h;
  BinaryMatrix s_w;
};

ConnectivityMatrices connectivity_matrices(const ValidatedSystem& system);

/// One R_s entry: empty for zero entries, otherwise the target T-brane's rate
/// field at the requested step.
struct UptakeEntry {
  std::optional<std::size_t> tbrane;
  std::span<const double> rate;

  bool nonzero() const noexcept { return tbrane.has_value(); }
};

struct UptakeMatrix {
  std::uint64_t step = 0;
  std::vector<std::vector<UptakeEntry>> entries;  // [dim C][dim T]
};

/// Replaces every normal-carrier unit of S_H with r_t(k); blocking and
/// associative rows stay zero.
UptakeMatrix uptake_matrix(const ValidatedSystem& system, std::uint64_t k);

/// W [dim T x dim C] whose entries reference W-carriers; transpose() gives
/// the view indexed [c][t].
struct WMatrix {
  std::vector<std::vector<std::optional<std::size_t>>> entries;  // [t][c] -> W-carrier index

  std::optional<std::size_t> at(std::size_t t, std::size_t c) const { return entries[t][c]; }
  std::vector<std::vector<std::optional<std::size_t>>> transpose() const;
};

WMatrix w_matrix(const ValidatedSystem& system);

/// |m(k+1)> = |m(k)> - R_s(k)|d(k)> + W^T(k)|d(k)>, evaluated row by row of
/// the matrices. Must agree with dynamics `step`.
SystemState matrix_step(const ValidatedSystem& system, const SystemState& state);

}  // namespace chtw
