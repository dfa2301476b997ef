#pragma once

// On-disk cache of unit-box spectra.
//
// File: <dir>/spectra-v1.txt, one record per line, whitespace separated:
//
//   v1 <n> <g_eff> <M> <E_cut> <K> <solver_tol> <complete_below> <E_1> ... <E_K>
//
// Energies are unit-box values in natural units, ascending, printed with 17
// significant digits. `complete_below` is the energy up to which the record
// holds every eigenvalue. Lines starting with '#' and lines of any other
// version tag are ignored. Records are appended under an advisory flock;
// a later record with the same key replaces an earlier one.

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <tuple>
#include <vector>

#include "szilard/units.hpp"

namespace szilard {

class SpectrumStore {
 public:
  static constexpr int kFormatVersion = 1;
  static constexpr const char* kEnvVar = "SZILARD_CACHE_DIR";

  struct Record {
    SubsystemKey key;
    double solver_tolerance = 0.0;
    double complete_below = 0.0;
    std::vector<double> energies;
  };

  /// Opens (creating the directory if needed) and loads existing records.
  explicit SpectrumStore(std::filesystem::path directory);

  /// Directory named by SZILARD_CACHE_DIR, if set and non-empty.
  static std::optional<std::filesystem::path> directory_from_env();

  std::optional<Record> find(const SubsystemKey& key) const;
  void insert(Record record);
  std::size_t size() const;
  std::vector<Record> records() const;
  std::size_t skipped_lines() const { return skipped_; }
  void clear();

  const std::filesystem::path& file() const { return file_; }

 private:
  using Key = std::tuple<int, double, int, double>;
  static Key key_of(const SubsystemKey& k) {
    return {k.n, k.g_eff, k.basis_size, k.energy_cutoff};
  }
  void load();

  std::filesystem::path file_;
  mutable std::shared_mutex mutex_;
  std::map<Key, Record> records_;
  std::size_t skipped_ = 0;
};

}  // namespace szilard
