#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "icemorph/mesh.hpp"

namespace icemorph {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

// Prescribed displacements on one boundary patch. Marker nodes without an
// entry do not move, so upstream tools only need to emit the wetted region.
struct DisplacementField {
  std::string patch;
  std::map<std::size_t, Vec3> entries;

  Vec3 at(std::size_t node) const {
    auto it = entries.find(node);
    return it == entries.end() ? Vec3{} : it->second;
  }
  double max_magnitude() const;
};

// SU2 ASCII subset: NDIME / NPOIN / NELEM / NMARK with MARKER_TAG and
// MARKER_ELEMS sections, in any section order.
Mesh read_su2(const std::string& path);
Mesh read_su2(std::istream& in, const std::string& path_label);

void write_su2(const Mesh& mesh, const std::string& path);
void write_su2(const Mesh& mesh, std::ostream& out);

struct CellData {
  std::string name;
  std::vector<double> values;  // one per mesh element
};

// VTK legacy ASCII, write-only, for visualization.
void write_vtk(const Mesh& mesh, const std::string& path,
               std::span<const CellData> cell_data = {});
void write_vtk(const Mesh& mesh, std::ostream& out,
               std::span<const CellData> cell_data = {});

// Text lines `node_index dx dy [dz]`; indices must lie on `marker`.
DisplacementField read_displacements(const std::string& path, const Mesh& mesh,
                                     const std::string& marker);
DisplacementField read_displacements(std::istream& in, const Mesh& mesh,
                                     const std::string& marker,
                                     const std::string& path_label);

void write_displacements(const DisplacementField& field, int dim,
                         const std::string& path);

}  // namespace icemorph
