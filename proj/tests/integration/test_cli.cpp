#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hopbank/bank_io.hpp"
#include "hopbank/pbm.hpp"
#include "hopbank/rng.hpp"
#include "hopbank/synth.hpp"

using namespace hopbank;

namespace {

const std::filesystem::path kCli = HOPBANK_CLI_PATH;

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / "hopbank_cli_test") {
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

int run(const std::string& args) {
  const std::string command = kCli.string() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::vector<char> slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::vector<char>((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("train, corrupt, denoise round trip") {
  TempDir dir;
  const std::string bank = (dir.path / "bank.hpbk").string();

  // a small bank: 12 synthetic 21x21 patterns over 2 networks
  REQUIRE(run("train --patterns synthetic:count=12,rows=21,cols=21,seed=5 --k 2 "
              "--rule paper --seed 9 --out " + bank) == 0);
  const NetworkBank loaded = load_bank(bank);
  CHECK(loaded.k() == 2);
  CHECK(loaded.n() == 441);
  CHECK(loaded.assignment().size() == 12);

  // pattern p00003 regenerated exactly as the CLI builds it
  const BinaryImage pattern = synth_pattern(21, 21, 0.5, false, derive_seed(5, 3));
  const auto clean = dir.path / "clean.pbm";
  write_pbm(pattern, clean);

  const auto noisy = dir.path / "noisy.pbm";
  REQUIRE(run("corrupt --in " + clean.string() + " --noise saltpepper:0.2 --seed 3 --out " +
              noisy.string()) == 0);
  CHECK(read_pbm(noisy) != pattern);

  const auto out = dir.path / "out.pbm";
  const auto report = dir.path / "report.txt";
  REQUIRE(run("denoise --bank " + bank + " --in " + noisy.string() +
              " --probe 100 --max-updates 30000 --seed 7 --out " + out.string() +
              " --report " + report.string()) == 0);
  CHECK(read_pbm(out) == pattern);

  const std::vector<char> report_text = slurp(report);
  const std::string text(report_text.begin(), report_text.end());
  CHECK(text.find("winner:") != std::string::npos);
  CHECK(text.find("delta_k") != std::string::npos);
  CHECK(text.find("converged: true") != std::string::npos);
}

TEST_CASE("identical seeds give byte-identical outputs") {
  TempDir dir;
  const std::string bank_a = (dir.path / "a.hpbk").string();
  const std::string bank_b = (dir.path / "b.hpbk").string();
  const std::string spec =
      "train --patterns synthetic:count=8,rows=9,cols=9,seed=2 --k 2 --rule projection "
      "--seed 4 --out ";
  REQUIRE(run(spec + bank_a) == 0);
  REQUIRE(run(spec + bank_b) == 0);
  CHECK(slurp(bank_a) == slurp(bank_b));
}

TEST_CASE("saltpepper:0 copies the image bytes") {
  TempDir dir;
  const BinaryImage img = synth_pattern(15, 11, 0.5, false, 6);
  const auto in = dir.path / "in.pbm";
  write_pbm(img, in);  // P4, the corrupt default output format

  const auto out = dir.path / "out.pbm";
  REQUIRE(run("corrupt --in " + in.string() + " --noise saltpepper:0 --seed 1 --out " +
              out.string()) == 0);
  CHECK(slurp(in) == slurp(out));
}

TEST_CASE("training from a directory of PBM files") {
  TempDir dir;
  const auto patterns = dir.path / "patterns";
  std::filesystem::create_directories(patterns);
  std::vector<BinaryImage> images;
  for (int p = 0; p < 6; ++p) {
    images.push_back(synth_pattern(9, 9, 0.5, false, derive_seed(40, p)));
    char name[16];
    std::snprintf(name, sizeof(name), "img%02d.pbm", p);
    write_pbm(images.back(), patterns / name);
  }

  // k = 1 degenerate bank holds everything in one network
  const std::string bank = (dir.path / "bank.hpbk").string();
  REQUIRE(run("train --patterns " + patterns.string() + " --k 1 --rule projection --seed 2 "
              "--out " + bank) == 0);
  const NetworkBank loaded = load_bank(bank);
  CHECK(loaded.k() == 1);
  CHECK(loaded.assignment().size() == 6);
  CHECK(loaded.assignment().count("img03.pbm") == 1);
  for (const auto& [id, index] : loaded.assignment()) CHECK(index == 0);

  // geometry mismatch between bank and input image fails cleanly
  const auto wrong = dir.path / "wrong.pbm";
  write_pbm(synth_pattern(5, 5, 0.5, false, 41), wrong);
  CHECK(run("denoise --bank " + bank + " --in " + wrong.string() + " --seed 1 --out " +
            (dir.path / "out.pbm").string()) != 0);

  // mixed geometries in the pattern directory are rejected
  write_pbm(synth_pattern(5, 5, 0.5, false, 42), patterns / "odd.pbm");
  CHECK(run("train --patterns " + patterns.string() + " --k 1 --rule projection --seed 2 "
            "--out " + (dir.path / "bank2.hpbk").string()) != 0);
}

TEST_CASE("capacity overload fails with a nonzero exit") {
  TempDir dir;
  const std::string bank = (dir.path / "bank.hpbk").string();
  // 500 patterns of n = 441 into one network
  CHECK(run("train --patterns synthetic:count=500,rows=21,cols=21,seed=1 --k 1 "
            "--rule paper --seed 1 --out " + bank) != 0);
  CHECK_FALSE(std::filesystem::exists(bank));
}

TEST_CASE("bad flags and unreadable inputs fail") {
  TempDir dir;
  CHECK(run("train --k 2 --seed 1 --out x.hpbk") != 0);  // missing --patterns
  CHECK(run("corrupt --in missing.pbm --noise saltpepper:0.4 --seed 1 --out y.pbm") != 0);
  CHECK(run("denoise --bank missing.hpbk --in also-missing.pbm --seed 1 --out z.pbm") != 0);
  CHECK(run("frobnicate") != 0);
}

TEST_CASE("bench runs a tiny config deterministically") {
  TempDir dir;
  const auto config = dir.path / "bench.cfg";
  {
    std::ofstream out(config);
    out << "rows = 9\ncols = 9\nk = 1,2\npatterns_per_network = 4\nrule = paper\n"
        << "noise = saltpepper:0.2\ntrials = 5\nprobe_updates = 20\nmax_updates = 2000\n"
        << "seed = 12\n";
  }
  const auto csv_a = dir.path / "a.csv";
  const auto csv_b = dir.path / "b.csv";
  REQUIRE(run("bench --config " + config.string() + " --out " + csv_a.string()) == 0);
  REQUIRE(run("bench --config " + config.string() + " --out " + csv_b.string()) == 0);
  CHECK(slurp(csv_a) == slurp(csv_b));

  const std::vector<char> raw = slurp(csv_a);
  const std::string text(raw.begin(), raw.end());
  CHECK(text.find("# aggregate k=1") != std::string::npos);
  CHECK(text.find("# aggregate k=2") != std::string::npos);
}

TEST_SUITE_END();
