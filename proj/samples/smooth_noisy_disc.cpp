// Smooth a synthetic noisy disc and report what changed.
//
//   smooth_noisy_disc [size] [r_max] [workers]

#include <cstdlib>
#include <iostream>

#include <topsmooth/topsmooth.hpp>

int main(int argc, char** argv) {
  using namespace topsmooth;
  const std::size_t size = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 256;
  const unsigned r_max = argc > 2 ? static_cast<unsigned>(std::strtoul(argv[2], nullptr, 10)) : 5;
  const std::size_t workers = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : default_worker_count();
  if (size == 0 || workers == 0) {
    std::cerr << "usage: smooth_noisy_disc [size] [r_max] [workers]\n";
    return 1;
  }

  const auto x = noisy_disc(size, size, 2024);
  const auto adj = AdjacencyPair::eight_four();
  const auto y = smooth(x, r_max, workers);

  const auto tx = topology_counts(x, adj);
  const auto ty = topology_counts(y, adj);
  std::cout << "input : " << tx.object << " components, " << tx.background << " background regions, perimeter "
            << perimeter(x) << '\n';
  std::cout << "output: " << ty.object << " components, " << ty.background << " background regions, perimeter "
            << perimeter(y) << '\n';
  return tx == ty ? 0 : 1;
}
