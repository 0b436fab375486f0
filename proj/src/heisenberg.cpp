#include "qaegate/heisenberg.hpp"

#include "qaegate/random.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <stdexcept>

namespace qaegate {

using nlohmann::json;

HeisenbergFamily isotropic_family(int n) { return {n, 0.1, 0.1, 0.1, 0.5}; }
HeisenbergFamily anisotropic_family(int n) { return {n, 0.1, 0.1, 0.5, 0.5}; }

ComplexMatrix hamiltonian(const HeisenbergFamily& f) {
  if (f.n < 1) throw std::invalid_argument("hamiltonian: n must be >= 1");
  const Eigen::Index dim = Eigen::Index{1} << f.n;
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (int j = 0; j + 1 < f.n; ++j) {
    h -= 0.5 * f.jx * embed(kron(sigma_x(), sigma_x()), {j, j + 1}, f.n);
    h -= 0.5 * f.jy * embed(kron(sigma_y(), sigma_y()), {j, j + 1}, f.n);
    h -= 0.5 * f.jz * embed(kron(sigma_z(), sigma_z()), {j, j + 1}, f.n);
  }
  for (int j = 0; j < f.n; ++j) h -= 0.5 * f.h * embed(sigma_z(), {j}, f.n);
  return h;
}

ComplexMatrix heisenberg_gate(const GateSample& s) {
  return expm_hermitian(hamiltonian(s.family), Complex(0, -s.t));
}

Dataset sample_dataset(const HeisenbergFamily& f, int n_train, int n_test, double t_lo,
                       double t_hi, std::uint64_t seed) {
  if (!(t_lo < t_hi)) throw std::invalid_argument("sample_dataset: empty range");
  if (n_train < 1 || n_test < 0)
    throw std::invalid_argument("sample_dataset: bad split sizes");
  Dataset d;
  d.family = f;
  d.seed = seed;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n_train; ++i) d.train.push_back({f, uniform_in(rng, t_lo, t_hi)});
  for (int i = 0; i < n_test; ++i) d.test.push_back({f, uniform_in(rng, t_lo, t_hi)});
  return d;
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok)
      throw std::runtime_error("dataset: unknown field \"" + it.key() + "\" in " + where);
  }
}

json samples_to_json(const std::vector<GateSample>& samples) {
  json arr = json::array();
  for (const GateSample& s : samples) arr.push_back(json{{"t", s.t}});
  return arr;
}

std::vector<GateSample> samples_from_json(const json& arr, const HeisenbergFamily& f,
                                          const std::string& where) {
  if (!arr.is_array()) throw std::runtime_error("dataset: " + where + " must be a list");
  std::vector<GateSample> out;
  for (const json& rec : arr) {
    if (!rec.is_object()) throw std::runtime_error("dataset: malformed record in " + where);
    reject_unknown_keys(rec, {"t"}, where + " record");
    if (!rec.contains("t") || !rec["t"].is_number())
      throw std::runtime_error("dataset: record in " + where + " is missing \"t\"");
    out.push_back({f, rec["t"].get<double>()});
  }
  return out;
}

}  // namespace

void save_dataset(const Dataset& d, const std::string& path,
                  const std::string& command_line) {
  json j;
  j["version"] = "1";
  j["family"] = {{"n", d.family.n}, {"jx", d.family.jx}, {"jy", d.family.jy},
                 {"jz", d.family.jz}, {"h", d.family.h}};
  j["seed"] = d.seed;
  j["train"] = samples_to_json(d.train);
  j["test"] = samples_to_json(d.test);
  if (!command_line.empty()) j["command_line"] = command_line;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::runtime_error("dataset: parse error in " + path + ": " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("dataset: top level must be an object");
  reject_unknown_keys(j, {"version", "family", "seed", "train", "test", "command_line"},
                      "top level");
  if (!j.contains("version") || !j["version"].is_string() || j["version"] != "1")
    throw std::runtime_error("dataset: unsupported version (expected \"1\")");
  if (!j.contains("family") || !j["family"].is_object())
    throw std::runtime_error("dataset: missing family");
  const json& fam = j["family"];
  reject_unknown_keys(fam, {"n", "jx", "jy", "jz", "h"}, "family");
  for (const char* k : {"n", "jx", "jy", "jz", "h"})
    if (!fam.contains(k) || !fam[k].is_number())
      throw std::runtime_error(std::string("dataset: family is missing \"") + k + "\"");

  Dataset d;
  d.family = {fam["n"].get<int>(), fam["jx"].get<double>(), fam["jy"].get<double>(),
              fam["jz"].get<double>(), fam["h"].get<double>()};
  if (d.family.n < 1) throw std::runtime_error("dataset: family n must be >= 1");
  if (!j.contains("seed") || !j["seed"].is_number_integer())
    throw std::runtime_error("dataset: missing seed");
  d.seed = j["seed"].get<std::uint64_t>();
  if (!j.contains("train") || !j.contains("test"))
    throw std::runtime_error("dataset: missing train/test split");
  d.train = samples_from_json(j["train"], d.family, "train");
  d.test = samples_from_json(j["test"], d.family, "test");
  return d;
}

}  // namespace qaegate
