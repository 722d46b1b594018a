#include <CLI11.hpp>

#include "intermac/cli.hpp"

using namespace intermac;

int main(int argc, char** argv) {
  CLI::App app{"MAC schemes over GF(q) and a network-coded storage audit simulator"};
  app.require_subcommand(1);

  cli::KeygenOptions keygen;
  auto* sc_keygen = app.add_subcommand("keygen", "pack a file and generate the key material");
  sc_keygen->add_option("--file", keygen.file, "input file to protect")->required();
  sc_keygen->add_option("--out-dir", keygen.out_dir, "artifact directory")->required();
  sc_keygen->add_option("--q", keygen.q, "prime modulus (default 2^61-1)");
  sc_keygen->add_option("--seed", keygen.seed, "RNG seed");
  sc_keygen->add_option("--m", keygen.m, "number of source blocks (default 4)");

  cli::DistributeOptions distribute;
  auto* sc_distribute = app.add_subcommand("distribute", "encode and tag blocks for each server");
  sc_distribute->add_option("--out-dir", distribute.out_dir, "artifact directory")->required();
  sc_distribute->add_option("--n", distribute.n, "number of servers")->required();
  sc_distribute->add_option("--d", distribute.d, "coded blocks per server")->required();
  sc_distribute->add_option("--seed", distribute.seed, "RNG seed");

  cli::AuditOptions audit_opt;
  auto* sc_audit = app.add_subcommand("audit", "challenge a server and verify its response");
  sc_audit->add_option("--out-dir", audit_opt.out_dir, "artifact directory")->required();
  sc_audit->add_option("--server", audit_opt.server, "server id or 'all'")->required();
  sc_audit->add_option("--seed", audit_opt.seed, "RNG seed");

  cli::CorruptOptions corrupt;
  auto* sc_corrupt = app.add_subcommand("corrupt", "flip one stored element on a server");
  sc_corrupt->add_option("--out-dir", corrupt.out_dir, "artifact directory")->required();
  sc_corrupt->add_option("--server", corrupt.server, "server id")->required();
  sc_corrupt->add_option("--slot", corrupt.slot, "slot index (1-based)")->required();
  sc_corrupt->add_option("--target", corrupt.target, "'block' or 'tag' (default block)");
  sc_corrupt->add_option("--seed", corrupt.seed, "RNG seed");

  cli::ReplayOptions replay;
  auto* sc_replay = app.add_subcommand("replay", "run the two-transmission replay script");
  sc_replay
      ->add_option("--scheme", replay.scheme,
                   "inner-product, carter-wegman, inter, or intercw")
      ->required();
  sc_replay->add_option("--q", replay.q, "prime modulus (default 2^61-1)");
  sc_replay->add_option("--xi", replay.xi, "message dimension (default 2)");
  sc_replay->add_option("--seed", replay.seed, "RNG seed");

  cli::ReconstructOptions reconstruct;
  auto* sc_reconstruct = app.add_subcommand("reconstruct", "rebuild the file from stored blocks");
  sc_reconstruct->add_option("--out-dir", reconstruct.out_dir, "artifact directory")->required();
  sc_reconstruct->add_option("--out", reconstruct.out, "output file path")->required();
  sc_reconstruct->add_option("--seed", reconstruct.seed, "RNG seed");

  cli::FullRankRateOptions rate;
  auto* sc_rate = app.add_subcommand("full-rank-rate", "empirical coefficient-matrix rank rate");
  sc_rate->add_option("--q", rate.q, "prime modulus (default 13)");
  sc_rate->add_option("--m", rate.m, "matrix dimension (default 2)");
  sc_rate->add_option("--trials", rate.trials, "Monte Carlo trials (default 100000)");
  sc_rate->add_option("--seed", rate.seed, "RNG seed");

  cli::StatCheckOptions stat;
  auto* sc_stat = app.add_subcommand("stat-check", "uniformity checks for sampler and PRF");
  sc_stat->add_option("--q", stat.q, "prime modulus (default 13)");
  sc_stat->add_option("--trials", stat.trials, "draws per check (default 100000)");
  sc_stat->add_option("--seed", stat.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitError;
  }

  if (sc_keygen->parsed()) return cli::cmd_keygen(keygen);
  if (sc_distribute->parsed()) return cli::cmd_distribute(distribute);
  if (sc_audit->parsed()) return cli::cmd_audit(audit_opt);
  if (sc_corrupt->parsed()) return cli::cmd_corrupt(corrupt);
  if (sc_replay->parsed()) return cli::cmd_replay(replay);
  if (sc_reconstruct->parsed()) return cli::cmd_reconstruct(reconstruct);
  if (sc_rate->parsed()) return cli::cmd_full_rank_rate(rate);
  if (sc_stat->parsed()) return cli::cmd_stat_check(stat);
  return cli::kExitError;
}
