#include "isacbeam/channel.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <Eigen/SVD>

namespace isacbeam {

ChannelSet generate_channels(const SystemConfig& cfg, Rng& rng) {
  ChannelSet out;
  out.phi = cfg.phi;
  out.H_hat.reserve(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    Eigen::MatrixXcd H(cfg.N, cfg.M_t);
    for (int r = 0; r < cfg.N; ++r)
      for (int c = 0; c < cfg.M_t; ++c) H(r, c) = rng.cnormal();
    out.H_hat.push_back(std::move(H));
  }
  return out;
}

Eigen::MatrixXcd sample_error(int N, int M_t, double phi, ErrorMode mode, Rng& rng) {
  Eigen::MatrixXcd delta(N, M_t);
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < M_t; ++c) delta(r, c) = rng.cnormal();
  if (phi == 0.0) return Eigen::MatrixXcd::Zero(N, M_t);
  const double spec = delta.jacobiSvd().singularValues()(0);
  if (spec == 0.0) return Eigen::MatrixXcd::Zero(N, M_t);
  const double target = (mode == ErrorMode::boundary) ? phi : phi * rng.uniform_pos();
  return delta * (target / spec);
}

std::string dump_channels(const ChannelSet& channels) {
  const int K = static_cast<int>(channels.H_hat.size());
  if (K == 0) throw std::invalid_argument("dump_channels: empty channel set");
  const int N = static_cast<int>(channels.H_hat[0].rows());
  const int M_t = static_cast<int>(channels.H_hat[0].cols());
  char buf[64];
  std::ostringstream out;
  std::snprintf(buf, sizeof(buf), "%.17g", channels.phi);
  out << K << " " << N << " " << M_t << " " << buf << "\n";
  for (const auto& H : channels.H_hat) {
    if (H.rows() != N || H.cols() != M_t)
      throw std::invalid_argument("dump_channels: inconsistent dimensions");
    for (int r = 0; r < N; ++r) {
      for (int c = 0; c < M_t; ++c) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g", H(r, c).real(), H(r, c).imag());
        out << buf << (c + 1 < M_t ? " " : "");
      }
      out << "\n";
    }
  }
  return out.str();
}

ChannelSet parse_channels(const std::string& text) {
  std::istringstream in(text);
  int K = 0, N = 0, M_t = 0;
  double phi = 0.0;
  if (!(in >> K >> N >> M_t >> phi))
    throw std::invalid_argument("parse_channels: bad header");
  if (K < 1 || N < 1 || M_t < 1 || phi < 0.0)
    throw std::invalid_argument("parse_channels: invalid header values");
  ChannelSet out;
  out.phi = phi;
  for (int k = 0; k < K; ++k) {
    Eigen::MatrixXcd H(N, M_t);
    for (int r = 0; r < N; ++r) {
      for (int c = 0; c < M_t; ++c) {
        std::string tok;
        if (!(in >> tok)) throw std::invalid_argument("parse_channels: truncated data");
        double re = 0.0, im = 0.0;
        if (std::sscanf(tok.c_str(), "%lg,%lg", &re, &im) != 2)
          throw std::invalid_argument("parse_channels: bad entry '" + tok + "'");
        H(r, c) = {re, im};
      }
    }
    out.H_hat.push_back(std::move(H));
  }
  return out;
}

void save_channels(const ChannelSet& channels, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("save_channels: cannot write '" + path + "'");
  out << dump_channels(channels);
}

ChannelSet load_channels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("load_channels: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_channels(ss.str());
}

}  // namespace isacbeam
