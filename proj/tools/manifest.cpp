#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>

#include "nlslab/error.hpp"

namespace nlslab::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw ValidationError("sha256 unavailable");
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

Manifest::Manifest(std::string command, json parameters)
    : command_(std::move(command)),
      parameters_(std::move(parameters)),
      start_(std::chrono::steady_clock::now()),
      started_at_(std::chrono::system_clock::now()) {}

void Manifest::write() const {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  const std::time_t started = std::chrono::system_clock::to_time_t(started_at_);
  std::tm tm{};
  gmtime_r(&started, &tm);
  std::ostringstream stamp;
  stamp << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");

  std::map<std::filesystem::path, json> per_dir;
  for (const auto& out : outputs_) {
    const auto dir = std::filesystem::absolute(out).parent_path();
    per_dir[dir].push_back({{"file", out.filename().string()}, {"sha256", sha256_file(out)},
                            {"bytes", std::filesystem::file_size(out)}});
  }
  for (const auto& [dir, files] : per_dir) {
    json m{{"tool", "nlslab"},
           {"version", NLSLAB_VERSION},
           {"command", command_},
           {"parameters", parameters_},
           {"grid", grid_},
           {"started_at", stamp.str()},
           {"wall_clock_s", wall},
           {"outputs", files}};
    write_file_atomic(dir / "manifest.json", m.dump(2) + "\n");
  }
}

}  // namespace nlslab::cli
