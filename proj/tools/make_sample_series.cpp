// Writes a synthetic daily closing-price series (geometric Brownian motion on
// business days) in the `date,close` format read by `osearch`.
//
//   make_sample_series [path] [days] [seed]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include "osearch/random.hpp"

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : "data/sample_prices.csv";
  const long days = argc > 2 ? std::strtol(argv[2], nullptr, 10) : 1339;
  const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 20180102;
  if (days <= 0) {
    std::cerr << "days must be positive\n";
    return 2;
  }

  std::ofstream out(path);
  if (!out) {
    std::cerr << "cannot write " << path << '\n';
    return 2;
  }

  osearch::Rng rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  const double mu = 0.0004;
  const double sigma = 0.025;

  using namespace std::chrono;
  sys_days day = year{2018} / January / 2;
  double price = 100.0;
  out << "date,close\n";
  for (long written = 0; written < days; day += std::chrono::days{1}) {
    const weekday wd{day};
    if (wd == Saturday || wd == Sunday) continue;
    const year_month_day ymd{day};
    char line[64];
    std::snprintf(line, sizeof line, "%04d-%02u-%02u,%.4f\n", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()), price);
    out << line;
    price *= std::exp(mu - 0.5 * sigma * sigma + sigma * z(rng));
    ++written;
  }
  return 0;
}
