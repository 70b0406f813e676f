// topsmooth command-line front end: smoothing, benchmarking, distance maps.

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <topsmooth/topsmooth.hpp>

namespace ts = topsmooth;

namespace {

std::size_t default_workers() {
  if (const char* env = std::getenv("TOPSMOOTH_WORKERS")) {
    try {
      std::size_t pos = 0;
      const unsigned long v = std::stoul(env, &pos);
      if (pos == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid TOPSMOOTH_WORKERS=" << env << '\n';
  }
  return ts::default_worker_count();
}

ts::AdjacencyPair parse_adj(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("adjacency must be written as n,nbar");
  return ts::AdjacencyPair::from_ints(std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1)));
}

template <class T, class F>
std::vector<T> parse_list(const std::string& s, F parse_item) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in list '" + s + "'");
    out.push_back(parse_item(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

ts::BinaryImage load_constraint(const std::string& path, const ts::BinaryImage& x, const char* what) {
  auto c = ts::read_pbm(path);
  if (!c.same_shape(x)) {
    throw std::invalid_argument(std::string(what) + " image is " + std::to_string(c.height()) + "x" +
                                std::to_string(c.width()) + ", input is " + std::to_string(x.height()) + "x" +
                                std::to_string(x.width()));
  }
  return c;
}

void print_counts(const char* label, const ts::BinaryImage& img, ts::AdjacencyPair adj) {
  const auto t = ts::topology_counts(img, adj);
  std::cout << label << ": object_components=" << t.object << " background_components=" << t.background
            << " pixels=" << img.count() << " perimeter=" << ts::perimeter(img) << '\n';
}

struct SmoothArgs {
  std::string input, output;
  unsigned radius = 5;
  std::optional<std::size_t> workers;
  std::string scheduler = "nps";
  std::string adj = "8,4";
  std::string keep, avoid;
  std::string format;
  bool verify = false;
};

int run_smooth(const SmoothArgs& a) {
  const auto in = ts::read_pbm_with_format(a.input);
  ts::SmoothingConfig cfg;
  cfg.r_max = a.radius;
  cfg.adj = parse_adj(a.adj);
  cfg.workers = a.workers ? *a.workers : default_workers();
  cfg.scheduler = ts::parse_scheduler(a.scheduler);
  if (!a.keep.empty()) cfg.keep = load_constraint(a.keep, in.image, "--constraint-keep");
  if (!a.avoid.empty()) cfg.avoid = load_constraint(a.avoid, in.image, "--constraint-avoid");

  ts::PbmFormat fmt = in.format;
  if (a.format == "p1") fmt = ts::PbmFormat::p1;
  else if (a.format == "p4") fmt = ts::PbmFormat::p4;

  const auto out = ts::hasf(in.image, cfg);
  ts::write_pbm(out, a.output, fmt);
  if (a.verify) {
    print_counts("before", in.image, cfg.adj);
    print_counts("after", out, cfg.adj);
    if (ts::topology_counts(in.image, cfg.adj) != ts::topology_counts(out, cfg.adj)) {
      std::cerr << "error: topology changed\n";
      return 1;
    }
  }
  return 0;
}

struct BenchArgs {
  std::string input;
  unsigned radius = 5;
  std::string workers_list = "1,2,4,8";
  std::size_t reps = 5;
  std::string scheduler_list = "nps,system";
};

int run_bench(const BenchArgs& a) {
  ts::BenchmarkOptions opts;
  opts.r_max = a.radius;
  opts.repetitions = a.reps;
  opts.workers = parse_list<std::size_t>(a.workers_list, [](const std::string& s) {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad worker count '" + s + "'");
    return static_cast<std::size_t>(v);
  });
  opts.schedulers = parse_list<ts::Scheduler>(a.scheduler_list, [](const std::string& s) { return ts::parse_scheduler(s); });
  const auto img = ts::read_pbm(a.input);
  std::cout << ts::benchmark_csv(ts::run_benchmark(img, opts));
  return 0;
}

struct EdtArgs {
  std::string input, output;
  std::string mode = "squared";
  std::string encoding = "p5";
  std::optional<std::size_t> workers;
};

int run_edt(const EdtArgs& a) {
  const auto img = ts::read_pbm(a.input);
  const auto d = ts::edt_squared(img, a.workers ? *a.workers : default_workers());
  ts::write_pgm(d, a.output, a.mode == "root" ? ts::PgmMode::root : ts::PgmMode::squared,
                a.encoding == "p2" ? ts::PgmEncoding::p2 : ts::PgmEncoding::p5);
  return 0;
}

struct SynthArgs {
  std::string output;
  std::size_t size = 512;
  std::uint64_t seed = 1;
  std::string format = "p4";
};

int run_synth(const SynthArgs& a) {
  if (a.size == 0) throw std::invalid_argument("--size must be positive");
  ts::write_pbm(ts::noisy_disc(a.size, a.size, a.seed), a.output, a.format == "p1" ? ts::PbmFormat::p1 : ts::PbmFormat::p4);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topology-preserving smoothing of binary images"};
  app.require_subcommand(1);

  SmoothArgs sa;
  auto* smooth = app.add_subcommand("smooth", "Smooth a PBM image with homotopic alternating sequential filters");
  smooth->add_option("input", sa.input, "Input PBM")->required();
  smooth->add_option("output", sa.output, "Output PBM")->required();
  smooth->add_option("-r,--radius", sa.radius, "Largest ball radius r_max")->capture_default_str();
  smooth->add_option("-w,--workers", sa.workers, "Worker threads (default: TOPSMOOTH_WORKERS or core count)")
      ->check(CLI::PositiveNumber);
  smooth->add_option("--scheduler", sa.scheduler, "nps|strided|system")
      ->check(CLI::IsMember({"nps", "strided", "system"}))
      ->capture_default_str();
  smooth->add_option("--adj", sa.adj, "Object,background adjacency: 8,4 or 4,8")
      ->check(CLI::IsMember({"8,4", "4,8"}))
      ->capture_default_str();
  smooth->add_option("--constraint-keep", sa.keep, "PBM of pixels that must stay object");
  smooth->add_option("--constraint-avoid", sa.avoid, "PBM of pixels that must stay background");
  smooth->add_option("--format", sa.format, "p1|p4 (default: same as input)")->check(CLI::IsMember({"p1", "p4"}));
  smooth->add_flag("--verify", sa.verify, "Print component counts before and after");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Time smoothing across worker counts; CSV on stdout");
  bench->add_option("input", ba.input, "Input PBM")->required();
  bench->add_option("-r,--radius", ba.radius, "Largest ball radius r_max")->capture_default_str();
  bench->add_option("--workers-list", ba.workers_list, "Comma-separated worker counts")->capture_default_str();
  bench->add_option("--reps", ba.reps, "Timings per configuration (minimum is reported)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--scheduler-list", ba.scheduler_list, "Comma-separated schedulers")->capture_default_str();

  EdtArgs ea;
  auto* edt = app.add_subcommand("edt", "Write the squared Euclidean distance map of a PBM as PGM");
  edt->add_option("input", ea.input, "Input PBM")->required();
  edt->add_option("output", ea.output, "Output PGM")->required();
  edt->add_option("--mode", ea.mode, "squared|root")->check(CLI::IsMember({"squared", "root"}))->capture_default_str();
  edt->add_option("--encoding", ea.encoding, "p2|p5")->check(CLI::IsMember({"p2", "p5"}))->capture_default_str();
  edt->add_option("-w,--workers", ea.workers, "Worker threads")->check(CLI::PositiveNumber);

  SynthArgs ya;
  auto* synth = app.add_subcommand("synth", "Write a synthetic noisy disc");
  synth->add_option("output", ya.output, "Output PBM")->required();
  synth->add_option("--size", ya.size, "Side length")->capture_default_str();
  synth->add_option("--seed", ya.seed, "Random seed")->capture_default_str();
  synth->add_option("--format", ya.format, "p1|p4")->check(CLI::IsMember({"p1", "p4"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*smooth) return run_smooth(sa);
    if (*bench) return run_bench(ba);
    if (*edt) return run_edt(ea);
    if (*synth) return run_synth(ya);
  } catch (const ts::PnmError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
