#include "icemorph/mesh_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace icemorph {

ParseError::ParseError(const std::string& path, std::size_t line,
                       const std::string& what)
    : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
      line_(line) {}

double DisplacementField::max_magnitude() const {
  double m = 0.0;
  for (const auto& [node, d] : entries) m = std::max(m, d.norm());
  return m;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

bool parse_double(const std::string& tok, double& value) {
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc{} && ptr == end;
}

bool parse_index(const std::string& tok, std::size_t& value) {
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  return ec == std::errc{} && ptr == end;
}

class LineReader {
 public:
  LineReader(std::istream& in, const std::string& path) : in_(in), path_(path) {}

  // Next non-empty, non-comment line. '%' starts a comment, as in SU2 files.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      const auto pct = line.find('%');
      if (pct != std::string::npos) line.erase(pct);
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  }

  std::size_t line_no() const { return line_no_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(path_, line_no_, what);
  }
  [[noreturn]] void fail_at(std::size_t line, const std::string& what) const {
    throw ParseError(path_, line, what);
  }

 private:
  std::istream& in_;
  std::string path_;
  std::size_t line_no_ = 0;
};

// "KEY= value" or "KEY=value"; returns false when the line has another shape.
bool split_keyword(const std::string& line, std::string& key, std::string& value) {
  const auto eq = line.find('=');
  if (eq == std::string::npos) return false;
  key = line.substr(0, eq);
  value = line.substr(eq + 1);
  auto strip = [](std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    const auto e = s.find_last_not_of(" \t\r\n");
    s = (b == std::string::npos) ? std::string{} : s.substr(b, e - b + 1);
  };
  strip(key);
  strip(value);
  return !key.empty();
}

Element parse_element_line(LineReader& reader, const std::string& line) {
  const auto tokens = tokenize(line);
  if (tokens.empty()) reader.fail("empty element line");
  std::size_t vtk_id = 0;
  if (!parse_index(tokens[0], vtk_id)) {
    reader.fail("expected an element type id, got '" + tokens[0] + "'");
  }
  Element e;
  if (!element_kind_from_vtk(static_cast<int>(vtk_id), e.kind)) {
    reader.fail("unknown element kind " + std::to_string(vtk_id));
  }
  const std::size_t count = element_node_count(e.kind);
  if (tokens.size() < count + 1) {
    reader.fail(std::string(element_kind_name(e.kind)) + " needs " +
                std::to_string(count) + " node indices");
  }
  e.nodes.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t idx = 0;
    if (!parse_index(tokens[i + 1], idx)) {
      reader.fail("bad node index '" + tokens[i + 1] + "'");
    }
    e.nodes.push_back(idx);
  }
  // A trailing element index, as emitted by some tools, is ignored.
  return e;
}

}  // namespace

Mesh read_su2(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file '" + path + "'");
  return read_su2(in, path);
}

Mesh read_su2(std::istream& in, const std::string& path_label) {
  LineReader reader(in, path_label);
  Mesh mesh;
  mesh.dim = 0;

  bool have_points = false, have_elements = false;
  std::vector<std::size_t> element_lines;
  std::vector<std::size_t> point_lines;
  struct MarkerLines {
    std::vector<std::size_t> lines;
  };
  std::vector<MarkerLines> marker_lines;

  std::string line, key, value;
  while (reader.next(line)) {
    if (!split_keyword(line, key, value)) {
      reader.fail("expected a section keyword, got '" + line + "'");
    }
    if (key == "NDIME") {
      std::size_t d = 0;
      if (!parse_index(value, d) || (d != 2 && d != 3)) {
        reader.fail("NDIME must be 2 or 3");
      }
      mesh.dim = static_cast<int>(d);
    } else if (key == "NPOIN") {
      if (mesh.dim == 0) reader.fail("NPOIN before NDIME");
      std::size_t count = 0;
      if (!parse_index(value, count)) reader.fail("bad NPOIN value '" + value + "'");
      mesh.nodes.reserve(count);
      for (std::size_t i = 0; i < count; ++i) {
        if (!reader.next(line)) reader.fail("unexpected end of file in NPOIN");
        const auto tokens = tokenize(line);
        if (tokens.size() < static_cast<std::size_t>(mesh.dim)) {
          reader.fail("point needs " + std::to_string(mesh.dim) + " coordinates");
        }
        Vec3 p;
        double* comps[3] = {&p.x, &p.y, &p.z};
        for (int d = 0; d < mesh.dim; ++d) {
          if (!parse_double(tokens[d], *comps[d])) {
            reader.fail("bad coordinate '" + tokens[d] + "'");
          }
        }
        mesh.nodes.push_back(p);
        point_lines.push_back(reader.line_no());
      }
      have_points = true;
    } else if (key == "NELEM") {
      std::size_t count = 0;
      if (!parse_index(value, count)) reader.fail("bad NELEM value '" + value + "'");
      mesh.elements.reserve(count);
      for (std::size_t i = 0; i < count; ++i) {
        if (!reader.next(line)) reader.fail("unexpected end of file in NELEM");
        mesh.elements.push_back(parse_element_line(reader, line));
        element_lines.push_back(reader.line_no());
      }
      have_elements = true;
    } else if (key == "NMARK") {
      std::size_t count = 0;
      if (!parse_index(value, count)) reader.fail("bad NMARK value '" + value + "'");
      for (std::size_t m = 0; m < count; ++m) {
        if (!reader.next(line) || !split_keyword(line, key, value) ||
            key != "MARKER_TAG") {
          reader.fail("expected MARKER_TAG");
        }
        Marker marker;
        marker.name = value;
        if (marker.name.empty()) reader.fail("empty marker name");
        if (!reader.next(line) || !split_keyword(line, key, value) ||
            key != "MARKER_ELEMS") {
          reader.fail("expected MARKER_ELEMS");
        }
        std::size_t elems = 0;
        if (!parse_index(value, elems)) {
          reader.fail("bad MARKER_ELEMS value '" + value + "'");
        }
        MarkerLines lines;
        for (std::size_t i = 0; i < elems; ++i) {
          if (!reader.next(line)) reader.fail("unexpected end of file in marker");
          marker.elements.push_back(parse_element_line(reader, line));
          lines.lines.push_back(reader.line_no());
        }
        mesh.markers.push_back(std::move(marker));
        marker_lines.push_back(std::move(lines));
      }
    } else {
      reader.fail("unknown section '" + key + "'");
    }
  }

  if (mesh.dim == 0) reader.fail("missing NDIME section");
  if (!have_points) reader.fail("missing NPOIN section");
  if (!have_elements) reader.fail("missing NELEM section");
  if (mesh.markers.empty()) reader.fail("mesh declares no boundary markers");

  const std::size_t n = mesh.nodes.size();
  auto check = [&](const Element& e, std::size_t at_line, bool boundary) {
    const bool kind_ok = boundary ? is_boundary_kind(e.kind, mesh.dim)
                                  : is_volume_kind(e.kind, mesh.dim);
    if (!kind_ok) {
      reader.fail_at(at_line, "element kind '" +
                                  std::string(element_kind_name(e.kind)) +
                                  "' not allowed here for a " +
                                  std::to_string(mesh.dim) + "D mesh");
    }
    for (std::size_t idx : e.nodes) {
      if (idx >= n) {
        reader.fail_at(at_line, "node index " + std::to_string(idx) +
                                    " out of range (mesh has " + std::to_string(n) +
                                    " nodes)");
      }
    }
  };
  for (std::size_t i = 0; i < mesh.elements.size(); ++i) {
    check(mesh.elements[i], element_lines[i], false);
  }
  for (std::size_t m = 0; m < mesh.markers.size(); ++m) {
    auto& marker = mesh.markers[m];
    for (std::size_t i = 0; i < marker.elements.size(); ++i) {
      check(marker.elements[i], marker_lines[m].lines[i], true);
    }
    marker.nodes = marker_nodes_from_elements(marker.elements);
  }

  if (auto dup = find_coincident_nodes(mesh)) {
    reader.fail_at(point_lines[dup->second],
                   "duplicate node: coincides with node " +
                       std::to_string(dup->first) + " (line " +
                       std::to_string(point_lines[dup->first]) + ")");
  }
  return mesh;
}

namespace {

void write_coord(std::ostream& out, double v) {
  out << std::setprecision(17) << v;
}

}  // namespace

void write_su2(const Mesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write mesh file '" + path + "'");
  write_su2(mesh, out);
  if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

void write_su2(const Mesh& mesh, std::ostream& out) {
  out << "NDIME= " << mesh.dim << "\n";
  out << "NELEM= " << mesh.elements.size() << "\n";
  for (const auto& e : mesh.elements) {
    out << vtk_cell_type(e.kind);
    for (std::size_t idx : e.nodes) out << ' ' << idx;
    out << "\n";
  }
  out << "NPOIN= " << mesh.nodes.size() << "\n";
  for (const auto& p : mesh.nodes) {
    write_coord(out, p.x);
    out << ' ';
    write_coord(out, p.y);
    if (mesh.dim == 3) {
      out << ' ';
      write_coord(out, p.z);
    }
    out << "\n";
  }
  out << "NMARK= " << mesh.markers.size() << "\n";
  for (const auto& m : mesh.markers) {
    out << "MARKER_TAG= " << m.name << "\n";
    out << "MARKER_ELEMS= " << m.elements.size() << "\n";
    for (const auto& e : m.elements) {
      out << vtk_cell_type(e.kind);
      for (std::size_t idx : e.nodes) out << ' ' << idx;
      out << "\n";
    }
  }
}

void write_vtk(const Mesh& mesh, const std::string& path,
               std::span<const CellData> cell_data) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write mesh file '" + path + "'");
  write_vtk(mesh, out, cell_data);
  if (!out) throw std::runtime_error("failed while writing '" + path + "'");
}

void write_vtk(const Mesh& mesh, std::ostream& out,
               std::span<const CellData> cell_data) {
  out << "# vtk DataFile Version 3.0\n";
  out << "icemorph mesh\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.nodes.size() << " double\n";
  for (const auto& p : mesh.nodes) {
    write_coord(out, p.x);
    out << ' ';
    write_coord(out, p.y);
    out << ' ';
    write_coord(out, p.z);
    out << "\n";
  }
  std::size_t list_size = 0;
  for (const auto& e : mesh.elements) list_size += e.nodes.size() + 1;
  out << "CELLS " << mesh.elements.size() << ' ' << list_size << "\n";
  for (const auto& e : mesh.elements) {
    out << e.nodes.size();
    for (std::size_t idx : e.nodes) out << ' ' << idx;
    out << "\n";
  }
  out << "CELL_TYPES " << mesh.elements.size() << "\n";
  for (const auto& e : mesh.elements) out << vtk_cell_type(e.kind) << "\n";
  if (!cell_data.empty()) {
    out << "CELL_DATA " << mesh.elements.size() << "\n";
    for (const auto& data : cell_data) {
      if (data.values.size() != mesh.elements.size()) {
        throw std::invalid_argument("cell data '" + data.name +
                                    "' length does not match element count");
      }
      out << "SCALARS " << data.name << " double 1\n";
      out << "LOOKUP_TABLE default\n";
      for (double v : data.values) {
        write_coord(out, v);
        out << "\n";
      }
    }
  }
}

DisplacementField read_displacements(const std::string& path, const Mesh& mesh,
                                     const std::string& marker) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open displacement file '" + path + "'");
  return read_displacements(in, mesh, marker, path);
}

DisplacementField read_displacements(std::istream& in, const Mesh& mesh,
                                     const std::string& marker,
                                     const std::string& path_label) {
  const Marker& patch = mesh.marker(marker);
  std::unordered_set<std::size_t> on_marker(patch.nodes.begin(), patch.nodes.end());

  DisplacementField field;
  field.patch = marker;

  LineReader reader(in, path_label);
  std::string line;
  while (reader.next(line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    const std::size_t expected = 1 + static_cast<std::size_t>(mesh.dim);
    if (tokens.size() != expected) {
      reader.fail("expected `node dx dy" +
                  std::string(mesh.dim == 3 ? " dz" : "") + "`, got " +
                  std::to_string(tokens.size()) + " tokens");
    }
    std::size_t node = 0;
    if (!parse_index(tokens[0], node)) {
      reader.fail("bad node index '" + tokens[0] + "'");
    }
    if (!on_marker.count(node)) {
      reader.fail("node " + std::to_string(node) + " is not on marker '" +
                  marker + "'");
    }
    Vec3 d;
    double* comps[3] = {&d.x, &d.y, &d.z};
    for (int c = 0; c < mesh.dim; ++c) {
      if (!parse_double(tokens[c + 1], *comps[c])) {
        reader.fail("bad displacement component '" + tokens[c + 1] + "'");
      }
      if (!std::isfinite(*comps[c])) {
        reader.fail("displacement component is not finite");
      }
    }
    field.entries[node] = d;
  }
  return field;
}

void write_displacements(const DisplacementField& field, int dim,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write displacement file '" + path + "'");
  for (const auto& [node, d] : field.entries) {
    out << node << ' ';
    write_coord(out, d.x);
    out << ' ';
    write_coord(out, d.y);
    if (dim == 3) {
      out << ' ';
      write_coord(out, d.z);
    }
    out << "\n";
  }
}

}  // namespace icemorph
