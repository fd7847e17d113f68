#include "mosaic/io.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace mosaic::io {

namespace {

const char* topology_name(Topology t) {
  return t == Topology::Toroidal ? "toroidal" : "bounded";
}
const char* unit_name(Unit u) {
  return u == Unit::Normalized ? "normalized" : "micrometers";
}

Topology topology_from(const std::string& s) {
  if (s == "toroidal") return Topology::Toroidal;
  if (s == "bounded") return Topology::Bounded;
  throw ParseError("unknown topology: " + s, 1);
}
Unit unit_from(const std::string& s) {
  if (s == "normalized") return Unit::Normalized;
  if (s == "micrometers") return Unit::Micrometers;
  throw ParseError("unknown unit: " + s, 1);
}

bool parse_double(const std::string& tok, double& out) {
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

std::uint64_t bits_key(const Vec2& p) {
  std::uint64_t hx, hy;
  static_assert(sizeof hx == sizeof p.x);
  std::memcpy(&hx, &p.x, sizeof hx);
  std::memcpy(&hy, &p.y, sizeof hy);
  return hx * 0x9e3779b97f4a7c15ULL ^ hy;
}

}  // namespace

RawPointFile parse_point_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path.string(), 0);

  RawPointFile out;
  out.meta = nlohmann::json::object();
  std::unordered_map<std::uint64_t, long> first_line;
  std::string line;
  long line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!header_seen && line_no == 1) {
        const auto body = line.substr(1);
        const auto parsed = nlohmann::json::parse(body, nullptr, false);
        if (parsed.is_object()) out.meta = parsed;
        header_seen = true;
      }
      continue;  // later '#' lines are plain comments
    }
    std::istringstream ss(line);
    std::string tx, ty, extra;
    if (!(ss >> tx >> ty) || (ss >> extra))
      throw ParseError(path.string() + ": malformed line " + std::to_string(line_no) +
                           ": expected two coordinates",
                       line_no);
    Vec2 p;
    if (!parse_double(tx, p.x) || !parse_double(ty, p.y))
      throw ParseError(path.string() + ": malformed line " + std::to_string(line_no) +
                           ": not a number",
                       line_no);
    if (p.x == 0.0) p.x = 0.0;
    if (p.y == 0.0) p.y = 0.0;
    const auto [it, inserted] = first_line.emplace(bits_key(p), line_no);
    if (!inserted) {
      // hash key equality: confirm the coordinates really repeat
      for (std::size_t k = 0; k < out.coords.size(); ++k) {
        if (out.coords[k].x == p.x && out.coords[k].y == p.y)
          throw DuplicatePointError(path.string() + ": duplicate coordinates on lines " +
                                    std::to_string(out.lines[k]) + " and " +
                                    std::to_string(line_no));
      }
    }
    out.coords.push_back(p);
    out.lines.push_back(line_no);
  }
  if (out.coords.size() < 2)
    throw InsufficientPointsError(path.string() + ": fewer than 2 points");
  return out;
}

LoadedPointSet read_point_set(const std::filesystem::path& path) {
  RawPointFile raw = parse_point_file(path);
  Domain domain;
  std::vector<Vec2> pts = std::move(raw.coords);

  if (raw.meta.contains("domain") && raw.meta["domain"].is_object()) {
    const auto& d = raw.meta["domain"];
    domain.width = d.value("width", 1.0);
    domain.height = d.value("height", 1.0);
    domain.topology = topology_from(d.value("topology", std::string("toroidal")));
    domain.unit = unit_from(d.value("unit", std::string("normalized")));
  } else if (raw.meta.contains("window") && raw.meta["window"].is_array() &&
             raw.meta["window"].size() == 2) {
    domain.width = raw.meta["window"][0].get<double>();
    domain.height = raw.meta["window"][1].get<double>();
    domain.topology = Topology::Bounded;
    domain.unit = unit_from(raw.meta.value("unit", std::string("micrometers")));
  } else {
    // tight bounding box, shifted to the origin and opened at the top
    double minx = pts[0].x, maxx = pts[0].x, miny = pts[0].y, maxy = pts[0].y;
    for (const auto& p : pts) {
      minx = std::min(minx, p.x);
      maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y);
      maxy = std::max(maxy, p.y);
    }
    for (auto& p : pts) {
      p.x -= minx;
      p.y -= miny;
    }
    const double pad = 1e-9;
    domain.width = (maxx - minx) * (1.0 + 1e-12) + pad;
    domain.height = (maxy - miny) * (1.0 + 1e-12) + pad;
    domain.topology = Topology::Bounded;
    domain.unit = unit_from(raw.meta.value("unit", std::string("micrometers")));
  }

  const std::string label = raw.meta.value("label", path.stem().string());
  return {PointSet2D(std::move(pts), domain, label), std::move(raw.meta)};
}

void write_point_set(const std::filesystem::path& path, const PointSet2D& ps,
                     const nlohmann::json& extra_meta) {
  nlohmann::json meta = extra_meta;
  meta["label"] = ps.label();
  meta["n"] = ps.size();
  meta["domain"] = {{"width", ps.domain().width},
                    {"height", ps.domain().height},
                    {"topology", topology_name(ps.domain().topology)},
                    {"unit", unit_name(ps.domain().unit)}};
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path.string());
  out << "# " << meta.dump() << "\n";
  out.precision(17);
  for (const auto& p : ps.points()) out << p.x << " " << p.y << "\n";
  if (!out) throw Error("write failed: " + path.string());
}

void write_curve(const std::filesystem::path& path, const PcfCurve& curve,
                 const std::string& label) {
  nlohmann::json meta = {
      {"label", label},
      {"n", curve.n},
      {"r_min", curve.params.r_min},
      {"r_max", curve.params.r_max},
      {"bins", curve.params.bins},
      {"sigma_smooth", curve.params.sigma_smooth},
      {"mode", curve.params.mode == PcfMode::Calibrated ? "calibrated" : "raw"},
      {"kernel", "gaussian, unit integral"},
  };
  nlohmann::json unreliable = nlohmann::json::array();
  for (std::size_t i = 0; i < curve.unreliable.size(); ++i)
    if (curve.unreliable[i]) unreliable.push_back(i);
  meta["unreliable_bins"] = unreliable;
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path.string());
  out << "# " << meta.dump() << "\n";
  out.precision(12);
  for (std::size_t i = 0; i < curve.radii.size(); ++i)
    out << curve.radii[i] << " " << curve.values[i] << "\n";
}

void write_spectrum(const std::filesystem::path& path, const RadialSpectrum& spectrum,
                    const std::string& label, std::size_t n) {
  nlohmann::json meta = {{"label", label}, {"n", n}};
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path.string());
  out << "# " << meta.dump() << "\n";
  out.precision(12);
  for (std::size_t i = 0; i < spectrum.freqs.size(); ++i)
    out << spectrum.freqs[i] << " " << spectrum.power[i] << "\n";
}

std::uint64_t hash_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot hash file: " + path.string());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    const auto got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i)
      h = (h ^ static_cast<unsigned char>(buf[i])) * 0x100000001b3ULL;
  }
  return h;
}

}  // namespace mosaic::io
