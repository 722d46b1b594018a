#pragma once

#include <cstdint>
#include <iostream>
#include <string>

#include "intermac/field.hpp"

namespace intermac::cli {

// Shared exit-code contract so shell-level checks need no output parsing.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;    // bad usage, I/O, malformed state
inline constexpr int kExitReject = 2;   // a verification said no
inline constexpr int kExitNoRank = 3;   // reconstruct never drew a full-rank block set

struct KeygenOptions {
  std::string file;
  std::string out_dir;
  uint64_t q = kMersenne61;
  uint64_t seed = 0;
  uint32_t m = 4;
};

struct DistributeOptions {
  std::string out_dir;
  uint32_t n = 0;
  uint32_t d = 0;
  uint64_t seed = 0;
};

struct AuditOptions {
  std::string out_dir;
  std::string server;  // "1".."n" or "all"
  uint64_t seed = 0;
};

struct CorruptOptions {
  std::string out_dir;
  uint32_t server = 0;
  uint32_t slot = 0;
  std::string target = "block";  // "block" or "tag"
  uint64_t seed = 0;
};

struct ReplayOptions {
  std::string scheme;
  uint64_t q = kMersenne61;
  uint32_t xi = 2;
  uint64_t seed = 0;
};

struct ReconstructOptions {
  std::string out_dir;
  std::string out;
  uint64_t seed = 0;
};

struct FullRankRateOptions {
  uint64_t q = 13;
  uint32_t m = 2;
  uint64_t trials = 100000;
  uint64_t seed = 0;
};

struct StatCheckOptions {
  uint64_t q = 13;
  uint64_t trials = 100000;
  uint64_t seed = 0;
};

int cmd_keygen(const KeygenOptions& opt, std::ostream& out = std::cout,
               std::ostream& err = std::cerr);
int cmd_distribute(const DistributeOptions& opt, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr);
int cmd_audit(const AuditOptions& opt, std::ostream& out = std::cout,
              std::ostream& err = std::cerr);
int cmd_corrupt(const CorruptOptions& opt, std::ostream& out = std::cout,
                std::ostream& err = std::cerr);
int cmd_replay(const ReplayOptions& opt, std::ostream& out = std::cout,
               std::ostream& err = std::cerr);
int cmd_reconstruct(const ReconstructOptions& opt, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr);
int cmd_full_rank_rate(const FullRankRateOptions& opt, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr);
int cmd_stat_check(const StatCheckOptions& opt, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr);

}  // namespace intermac::cli
