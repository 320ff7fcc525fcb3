#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "isacbeam/config.hpp"
#include "isacbeam/rng.hpp"

namespace isacbeam {

// Estimated downlink channels and the spectral-norm radius of the error ball.
struct ChannelSet {
  std::vector<Eigen::MatrixXcd> H_hat;  // K matrices, N x M_t
  double phi = 0.0;
};

// I.i.d. CN(0,1) entries per user; deterministic in the config seed.
ChannelSet generate_channels(const SystemConfig& cfg, Rng& rng);

enum class ErrorMode { interior, boundary };

// Draws an estimation error with spectral norm <= phi (interior) or
// exactly phi (boundary).
Eigen::MatrixXcd sample_error(int N, int M_t, double phi, ErrorMode mode, Rng& rng);

// Text dump: header "K N M_t phi", then complex entries as "re,im" pairs in
// row-major order, one matrix row per line.
std::string dump_channels(const ChannelSet& channels);
ChannelSet parse_channels(const std::string& text);
void save_channels(const ChannelSet& channels, const std::string& path);
ChannelSet load_channels(const std::string& path);

}  // namespace isacbeam
