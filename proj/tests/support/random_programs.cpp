#include "support/random_programs.hpp"

#include "qaref/printer.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

namespace qaref::testing {

double uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
  const double u1 = std::max(uniform(rng), 1e-300);
  const double u2 = uniform(rng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

int randomInt(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<int> distinctQubits(std::mt19937_64& rng, int count, int total) {
  std::vector<int> all(static_cast<size_t>(total));
  for (int i = 0; i < total; ++i) {
    all[static_cast<size_t>(i)] = i;
  }
  for (int i = 0; i < count; ++i) {
    const int j = randomInt(rng, i, total - 1);
    std::swap(all[static_cast<size_t>(i)], all[static_cast<size_t>(j)]);
  }
  all.resize(static_cast<size_t>(count));
  return all;
}

} // namespace

std::string randomProgram(std::mt19937_64& rng,
                          const RandomProgramOptions& options) {
  const int numQubits = randomInt(rng, 2, options.maxQubits);
  const auto qubitName = [&](int q) {
    return "q[" + std::to_string(q) + "]";
  };

  static const char* singleGates[] = {"x", "y",   "z", "h",
                                      "s", "sdg", "t", "tdg"};
  static const char* rotationGates[] = {"rx", "ry", "rz", "u1"};
  static const double angles[] = {0.3, std::numbers::pi / 4,
                                  std::numbers::pi / 2, 2.1, -0.9};

  std::vector<std::string> lines;
  const int gateCount = randomInt(rng, 1, options.maxGates);
  for (int g = 0; g < gateCount; ++g) {
    const double roll = uniform(rng);
    std::ostringstream line;
    if (options.withBarriers && roll < 0.04) {
      const auto qubits = distinctQubits(rng, randomInt(rng, 1, 2), numQubits);
      line << "barrier";
      for (size_t i = 0; i < qubits.size(); ++i) {
        line << (i == 0 ? " " : ", ") << qubitName(qubits[i]);
      }
      line << ";";
    } else if (options.withMeasurements && roll < 0.08) {
      const int q = randomInt(rng, 0, numQubits - 1);
      if (uniform(rng) < 0.5) {
        line << "measure " << qubitName(q) << " -> c[" << q << "];";
      } else {
        line << "reset " << qubitName(q) << ";";
      }
    } else if (options.withWholeRegisterGates && roll < 0.12) {
      line << singleGates[rng() % 8] << " q;";
    } else if (roll < 0.45) {
      line << singleGates[rng() % 8] << " " << qubitName(randomInt(rng, 0, numQubits - 1)) << ";";
    } else if (roll < 0.60) {
      line << rotationGates[rng() % 4] << "(" << formatDouble(angles[rng() % 5])
           << ") " << qubitName(randomInt(rng, 0, numQubits - 1)) << ";";
    } else if (numQubits >= 3 && roll < 0.68) {
      const auto qubits = distinctQubits(rng, 3, numQubits);
      line << "ccx " << qubitName(qubits[0]) << ", " << qubitName(qubits[1])
           << ", " << qubitName(qubits[2]) << ";";
    } else {
      static const char* twoGates[] = {"cx", "cz", "swap"};
      const auto qubits = distinctQubits(rng, 2, numQubits);
      line << twoGates[rng() % 3] << " " << qubitName(qubits[0]) << ", "
           << qubitName(qubits[1]) << ";";
    }
    lines.push_back(line.str());
  }

  // Scatter assertions at random positions.
  const int assertionCount = randomInt(rng, 1, options.maxAssertions);
  for (int a = 0; a < assertionCount; ++a) {
    std::ostringstream line;
    const int kind = randomInt(rng, 0, 2);
    if (kind == 0) {
      const auto targets =
          distinctQubits(rng, randomInt(rng, 1, std::min(3, numQubits)),
                         numQubits);
      line << "assert-sup";
      for (size_t i = 0; i < targets.size(); ++i) {
        line << (i == 0 ? " " : ", ") << qubitName(targets[i]);
      }
      line << ";";
    } else if (kind == 1 && numQubits >= 2) {
      const auto targets =
          distinctQubits(rng, randomInt(rng, 2, std::min(3, numQubits)),
                         numQubits);
      line << "assert-ent";
      for (size_t i = 0; i < targets.size(); ++i) {
        line << (i == 0 ? " " : ", ") << qubitName(targets[i]);
      }
      line << ";";
    } else {
      const int k = randomInt(rng, 1, std::min(2, numQubits));
      const auto targets = distinctQubits(rng, k, numQubits);
      std::vector<std::complex<double>> amps(size_t{1} << k);
      if (uniform(rng) < 0.5) {
        amps[rng() % amps.size()] = 1.0;
      } else {
        double norm = 0.0;
        for (auto& amp : amps) {
          amp = {gaussian(rng), gaussian(rng)};
          norm += std::norm(amp);
        }
        norm = std::sqrt(norm);
        for (auto& amp : amps) {
          amp /= norm;
        }
      }
      line << "assert-eq";
      for (size_t i = 0; i < targets.size(); ++i) {
        line << (i == 0 ? " " : ", ") << qubitName(targets[i]);
      }
      line << " { ";
      for (size_t i = 0; i < amps.size(); ++i) {
        line << (i == 0 ? "" : ", ") << formatComplex(amps[i]);
      }
      line << " }";
    }
    const size_t pos = rng() % (lines.size() + 1);
    lines.insert(lines.begin() + static_cast<std::ptrdiff_t>(pos),
                 line.str());
  }

  std::ostringstream out;
  out << "qreg q[" << numQubits << "];\n";
  if (options.withMeasurements) {
    out << "creg c[" << numQubits << "];\n";
  }
  for (const auto& line : lines) {
    out << line << "\n";
  }
  return out.str();
}

} // namespace qaref::testing
