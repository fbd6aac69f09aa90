#include "nonloc/grid_io.hpp"

#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace nonloc {

static_assert(std::endian::native == std::endian::little,
              "grid files are little-endian float64");

void write_grid_function(const std::string& path, const GridFunction& u) {
  validate(u.grid);
  if (std::int64_t(u.values.size()) != u.grid.size())
    throw std::invalid_argument("grid function size does not match its grid");
  const std::filesystem::path header(path);
  const std::string payload = header.stem().string() + ".bin";
  const std::filesystem::path bin = header.parent_path() / payload;

  char boxbuf[40];
  std::snprintf(boxbuf, sizeof(boxbuf), "%.17g", u.grid.box);
  std::ofstream hs(header, std::ios::binary);
  if (!hs) throw std::runtime_error("cannot open for writing: " + path);
  hs << "{\n"
     << "  \"d\": " << u.grid.d << ",\n"
     << "  \"n\": " << u.grid.n << ",\n"
     << "  \"box\": " << boxbuf << ",\n"
     << "  \"dtype\": \"f64\",\n"
     << "  \"order\": \"row-major\",\n"
     << "  \"payload\": \"" << payload << "\"\n"
     << "}\n";
  if (!hs) throw std::runtime_error("write failed: " + path);

  std::ofstream bs(bin, std::ios::binary);
  if (!bs) throw std::runtime_error("cannot open for writing: " + bin.string());
  bs.write(reinterpret_cast<const char*>(u.values.data()),
           std::streamsize(u.values.size() * sizeof(double)));
  if (!bs) throw std::runtime_error("write failed: " + bin.string());
}

GridFunction read_grid_function(const std::string& path) {
  std::ifstream hs(path, std::ios::binary);
  if (!hs) throw std::runtime_error("cannot open grid file: " + path);
  nlohmann::json j;
  try {
    hs >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error("bad grid header " + path + ": " + e.what());
  }
  for (const char* key : {"d", "n", "box", "dtype", "order", "payload"})
    if (!j.contains(key))
      throw std::runtime_error("grid header " + path + " is missing \"" + key +
                               "\"");
  if (j["dtype"] != "f64" || j["order"] != "row-major")
    throw std::runtime_error("grid header " + path +
                             ": only f64 row-major payloads are supported");
  GridFunction u;
  u.grid.d = j["d"].get<int>();
  u.grid.n = j["n"].get<int>();
  u.grid.box = j["box"].get<double>();
  validate(u.grid);

  const std::filesystem::path bin =
      std::filesystem::path(path).parent_path() /
      j["payload"].get<std::string>();
  std::ifstream bs(bin, std::ios::binary | std::ios::ate);
  if (!bs) throw std::runtime_error("cannot open payload: " + bin.string());
  const std::streamsize bytes = bs.tellg();
  const std::int64_t expect = u.grid.size() * std::int64_t(sizeof(double));
  if (bytes != expect)
    throw std::runtime_error("payload " + bin.string() + " has " +
                             std::to_string(bytes) + " bytes, expected " +
                             std::to_string(expect));
  u.values.resize(std::size_t(u.grid.size()));
  bs.seekg(0);
  bs.read(reinterpret_cast<char*>(u.values.data()), expect);
  if (!bs) throw std::runtime_error("read failed: " + bin.string());
  return u;
}

}  // namespace nonloc
