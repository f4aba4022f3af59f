#include "vsacap/oracle.hpp"

#include <stdexcept>
#include <string>

#include "vsacap/setalg.hpp"

namespace vsacap {

double agreement_probability(unsigned n) {
  if (n == 0) throw std::invalid_argument("agreement_probability: n must be positive");
  if (n - 1 >= 63 || (std::uint64_t{1} << (n - 1)) > kMaxEnumerationStates) {
    throw std::length_error("agreement_probability: 2^" + std::to_string(n - 1) + " patterns exceed the enumeration bound");
  }
  // Fix S_ij = +1 by symmetry; walk every pattern of the other n-1 signs.
  const std::uint64_t patterns = std::uint64_t{1} << (n - 1);
  std::uint64_t wins2 = 0;  // twice the favourable count, so a tie adds 1
  for (std::uint64_t p = 0; p < patterns; ++p) {
    const int plus = __builtin_popcountll(p);
    const int sum = 1 + plus - (static_cast<int>(n) - 1 - plus);
    wins2 += sum > 0 ? 2 : (sum == 0 ? 1 : 0);
  }
  return static_cast<double>(wins2) / (2.0 * static_cast<double>(patterns));
}

namespace {

// Probability that the fold ends agreeing with x1 = +1, starting from x at fold j.
double fold(int x, unsigned j, unsigned r, std::uint64_t& visited) {
  if (++visited > kMaxEnumerationStates) throw std::length_error("depth enumeration exceeds the state bound");
  if (j > r) return x == 1 ? 1.0 : 0.0;
  double p = 0;
  for (int xj : {1, -1}) {
    const int s = x + xj;
    if (s != 0) {
      p += 0.5 * fold(s > 0 ? 1 : -1, j + 1, r, visited);
    } else {
      p += 0.25 * fold(1, j + 1, r, visited);
      p += 0.25 * fold(-1, j + 1, r, visited);
    }
  }
  return p;
}

SymbolSet set_arg(const nlohmann::json& instance, const char* key) { return SymbolSet::from_json(instance.at(key)); }

}  // namespace

double depth_agreement_probability(unsigned r) {
  if (r == 0) throw std::invalid_argument("depth_agreement_probability: r must be positive");
  std::uint64_t visited = 0;
  return fold(1, 2, r, visited);
}

double oracle_check(std::string_view arch, std::string_view task, const nlohmann::json& instance) {
  if (task == "intersection") return static_cast<double>(intersection_size(set_arg(instance, "x"), set_arg(instance, "y")));
  if (task == "wedgedot") return static_cast<double>(wedgedot(set_arg(instance, "x"), set_arg(instance, "y")));
  if (task == "l1") return static_cast<double>(l1_distance(set_arg(instance, "x"), set_arg(instance, "y")));
  if (task == "norm") {
    const auto x = set_arg(instance, "x");
    return static_cast<double>(intersection_size(x, x));
  }
  if (task == "member") return set_arg(instance, "x").contains(instance.at("j").get<std::uint64_t>()) ? 1.0 : 0.0;
  if (arch == "mapb" && task == "agreement") return agreement_probability(instance.at("n").get<unsigned>());
  if (arch == "mapb" && task == "depth-agreement") return depth_agreement_probability(instance.at("r").get<unsigned>());
  throw std::invalid_argument("no oracle for " + std::string(arch) + "/" + std::string(task));
}

}  // namespace vsacap
