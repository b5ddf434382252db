#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "rgc/scenario.hpp"

namespace fs = std::filesystem;

namespace rgc {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string file_for(const std::string& dir, const CacheKey& k) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << k.hash() << ".rgc";
  return (fs::path(dir) / os.str()).string();
}

}  // namespace

std::uint64_t CacheKey::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

CacheKey channel_key(const ScenarioConfig& c, const PointSpec& p) {
  std::ostringstream os;
  os << "version=" << code_version << ";kind=" << (c.output == OutputKind::passive ? "passive" : "active")
     << ";orientation=" << (c.geometry.orientation == Orientation::counter ? "counter" : "parallel")
     << ";accel_I=" << num(p.accel_I) << ";accel_II=" << num(p.accel_II) << ";D=" << num(p.D)
     << ";L_I=" << num(p.L_I) << ";L_II=" << num(p.L_II) << ";Omega0_I=" << num(p.Omega0_I)
     << ";Omega0_II=" << num(p.Omega0_II) << ";mass=" << num(p.mass) << ";a_conv=" << num(c.a_conv)
     << ";tail_tol=" << num(c.tail_tol) << ";d_eps=" << num(c.d_eps);
  return {os.str()};
}

std::string default_cache_dir() {
  if (const char* e = std::getenv("RGC_CACHE_DIR"); e && *e) return e;
  if (const char* h = std::getenv("XDG_CACHE_HOME"); h && *h) return (fs::path(h) / "rgc").string();
  if (const char* h = std::getenv("HOME"); h && *h) return (fs::path(h) / ".cache" / "rgc").string();
  return ".rgc-cache";
}

std::optional<std::string> cache_get(const std::string& dir, const CacheKey& key) {
  std::ifstream in(file_for(dir, key), std::ios::binary);
  if (!in) return std::nullopt;
  std::string first;
  if (!std::getline(in, first) || first != "key " + key.text) return std::nullopt;
  std::ostringstream rest;
  rest << in.rdbuf();
  std::string body = rest.str();
  // trailer guards against truncated writes
  const std::string end = "end\n";
  if (body.size() < end.size() || body.compare(body.size() - end.size(), end.size(), end) != 0)
    return std::nullopt;
  body.resize(body.size() - end.size());
  return body;
}

bool cache_put(const std::string& dir, const CacheKey& key, const std::string& payload) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    warn("cache disabled: cannot create " + dir + ": " + ec.message());
    return false;
  }
  const std::string target = file_for(dir, key);
  std::ostringstream tmpname;
  tmpname << target << ".tmp." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.'
          << std::random_device{}();
  {
    std::ofstream out(tmpname.str(), std::ios::binary | std::ios::trunc);
    if (!out) {
      warn("cache disabled: cannot write in " + dir);
      return false;
    }
    out << "key " << key.text << '\n' << payload << "end\n";
    if (!out) {
      warn("cache write failed in " + dir);
      fs::remove(tmpname.str(), ec);
      return false;
    }
  }
  fs::rename(tmpname.str(), target, ec);
  if (ec) {
    warn("cache rename failed: " + ec.message());
    fs::remove(tmpname.str(), ec);
    return false;
  }
  return true;
}

int cache_clear(const std::string& dir) {
  std::error_code ec;
  int n = 0;
  if (!fs::is_directory(dir, ec)) return 0;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    const auto name = e.path().filename().string();
    if (name.size() > 4 && (name.ends_with(".rgc") || name.find(".rgc.tmp.") != std::string::npos)) {
      fs::remove(e.path(), ec);
      if (!ec) ++n;
    }
  }
  return n;
}

std::string serialize(const ChannelPhysics& p) {
  std::ostringstream os;
  os << std::setprecision(17);
  auto c = [&](const char* k, cplx v) { os << k << ' ' << v.real() << ' ' << v.imag() << '\n'; };
  c("alpha_I", p.overlaps.alpha_I);
  c("beta_I", p.overlaps.beta_I);
  c("alpha_II", p.overlaps.alpha_II);
  c("beta_II", p.overlaps.beta_II);
  os << "n_I " << p.n_I << ' ' << p.n_I_err << '\n';
  os << "n_II " << p.n_II << ' ' << p.n_II_err << '\n';
  c("n_plus", p.cross.plus);
  c("n_minus", p.cross.minus);
  os << "cross_err " << p.cross.error_estimate << ' ' << int(p.cross.converged) << '\n';
  return os.str();
}

std::optional<ChannelPhysics> deserialize_physics(const std::string& s) {
  std::istringstream is(s);
  ChannelPhysics p;
  std::string k;
  int seen = 0;
  auto c = [&](cplx& v) {
    double a, b;
    if (!(is >> a >> b)) return false;
    v = {a, b};
    return true;
  };
  while (is >> k) {
    bool ok = true;
    if (k == "alpha_I") ok = c(p.overlaps.alpha_I);
    else if (k == "beta_I") ok = c(p.overlaps.beta_I);
    else if (k == "alpha_II") ok = c(p.overlaps.alpha_II);
    else if (k == "beta_II") ok = c(p.overlaps.beta_II);
    else if (k == "n_I") ok = bool(is >> p.n_I >> p.n_I_err);
    else if (k == "n_II") ok = bool(is >> p.n_II >> p.n_II_err);
    else if (k == "n_plus") ok = c(p.cross.plus);
    else if (k == "n_minus") ok = c(p.cross.minus);
    else if (k == "cross_err") {
      int cv;
      ok = bool(is >> p.cross.error_estimate >> cv);
      p.cross.converged = cv != 0;
    } else
      return std::nullopt;
    if (!ok) return std::nullopt;
    ++seen;
  }
  if (seen != 9) return std::nullopt;
  return p;
}

}  // namespace rgc
