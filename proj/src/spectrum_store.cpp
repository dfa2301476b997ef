#include "szilard/spectrum_store.hpp"

#include <sys/file.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>

#include "szilard/errors.hpp"

namespace szilard {
namespace {

constexpr const char* kFileName = "spectra-v1.txt";
constexpr const char* kTag = "v1";

std::string format_record(const SpectrumStore::Record& r) {
  std::string line;
  char buf[64];
  auto put = [&](const char* fmt, auto v) {
    std::snprintf(buf, sizeof buf, fmt, v);
    line += buf;
  };
  line += kTag;
  put(" %d", r.key.n);
  put(" %.17g", r.key.g_eff);
  put(" %d", r.key.basis_size);
  put(" %.17g", r.key.energy_cutoff);
  put(" %zu", r.energies.size());
  put(" %.3g", r.solver_tolerance);
  put(" %.17g", r.complete_below);
  for (double e : r.energies) put(" %.17g", e);
  line += '\n';
  return line;
}

}  // namespace

SpectrumStore::SpectrumStore(std::filesystem::path directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw StoreError("cannot create cache directory " + directory.string());
  file_ = directory / kFileName;
  load();
}

std::optional<std::filesystem::path> SpectrumStore::directory_from_env() {
  const char* v = std::getenv(kEnvVar);
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::filesystem::path(v);
}

void SpectrumStore::load() {
  std::ifstream in(file_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    std::string tag;
    is >> tag;
    if (tag != kTag) {
      ++skipped_;
      continue;
    }
    Record r;
    std::size_t count = 0;
    is >> r.key.n >> r.key.g_eff >> r.key.basis_size >> r.key.energy_cutoff >> count >>
        r.solver_tolerance >> r.complete_below;
    r.energies.resize(count);
    for (double& e : r.energies) is >> e;
    if (!is) {
      ++skipped_;
      continue;
    }
    records_[key_of(r.key)] = std::move(r);
  }
}

std::optional<SpectrumStore::Record> SpectrumStore::find(const SubsystemKey& key) const {
  std::shared_lock lock(mutex_);
  const auto it = records_.find(key_of(key));
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

void SpectrumStore::insert(Record record) {
  const std::string line = format_record(record);
  std::unique_lock lock(mutex_);
  std::FILE* f = std::fopen(file_.c_str(), "a");
  if (f == nullptr) throw StoreError("cannot open " + file_.string() + " for writing");
  ::flock(::fileno(f), LOCK_EX);
  const bool ok = std::fputs(line.c_str(), f) >= 0 && std::fflush(f) == 0;
  ::flock(::fileno(f), LOCK_UN);
  std::fclose(f);
  if (!ok) throw StoreError("write to " + file_.string() + " failed");
  records_[key_of(record.key)] = std::move(record);
}

std::size_t SpectrumStore::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

std::vector<SpectrumStore::Record> SpectrumStore::records() const {
  std::shared_lock lock(mutex_);
  std::vector<Record> out;
  out.reserve(records_.size());
  for (const auto& [k, r] : records_) out.push_back(r);
  return out;
}

void SpectrumStore::clear() {
  std::unique_lock lock(mutex_);
  std::error_code ec;
  std::filesystem::remove(file_, ec);
  if (ec) throw StoreError("cannot remove " + file_.string());
  records_.clear();
  skipped_ = 0;
}

}  // namespace szilard
