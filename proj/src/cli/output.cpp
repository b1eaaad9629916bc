#include "cli/output.hpp"

#include <fstream>
#include <sstream>

#include "banditlab/errors.hpp"
#include "banditlab/sim_engine.hpp"

namespace banditlab::cli {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
    os << content;
    os.flush();
    if (!os) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

std::string json_hash(const Json& j) { return fnv1a_hex(j.dump()); }

void write_manifest(const fs::path& dir, const RunManifest& m) {
  Json modules{{"core-model", kVersion}, {"policies", kVersion}, {"asymptotics", kVersion},
               {"ts-exact", kVersion},   {"sim-engine", kVersion}, {"stats", kVersion},
               {"cli", kVersion}};
  Json j{{"command", m.command},
         {"config_hash", m.config_hash},
         {"master_seed", m.master_seed},
         {"versions", {{"banditlab", kVersion}, {"modules", modules}}},
         {"config", m.config},
         {"outputs", m.outputs},
         {"wall_clock_seconds", m.wall_clock_seconds}};
  write_file_atomic(dir / "manifest.json", j.dump(2) + "\n");
}

std::string histogram_csv(const Histogram& h, const std::vector<double>& reference_density) {
  std::ostringstream os;
  os << "bin_lo,bin_hi,count,density";
  if (!reference_density.empty()) os << ",reference_density";
  os << '\n';
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    const double lo = h.lo + static_cast<double>(i) * h.bin_width();
    os << format_double(lo) << ',' << format_double(lo + h.bin_width()) << ',' << h.counts[i] << ','
       << format_double(h.density(i));
    if (!reference_density.empty()) os << ',' << format_double(reference_density[i]);
    os << '\n';
  }
  return os.str();
}

}  // namespace banditlab::cli
