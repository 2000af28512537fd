#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "mindisk/blowup.hpp"
#include "mindisk/disk.hpp"
#include "mindisk/mse.hpp"
#include "mindisk/multigraph.hpp"
#include "mindisk/structure.hpp"
#include "mindisk/surface.hpp"

namespace mindisk::io {

using ordered_json = nlohmann::ordered_json;

// %.17g, enough digits to round-trip a double exactly
std::string format_double(double x);

std::string read_file(const std::string& path);
// write to <path>.tmp in the same directory, then rename over path
void atomic_write(const std::string& path, const std::string& content);

std::uint64_t fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

// OBJ: "v x y z" per node (row-major, node id i*(nt+1)+j+1), triangles
// splitting each grid cell along (i,j) -> (i+1,j+1)
std::string obj_from_patch(const ParamPatch& p);
std::string obj_from_disk(const DiskSample& d);
std::string obj_from_multigraph(const MultiGraph& g);

// per-vertex |A|^2 column, vertex order
std::string a2_csv(const DiskSample& d);

// mesh + curvature columns: s,t,x,y,z,H,K,A2
std::string geometry_csv(const ParamPatch& p, const GeomData& g);
// rho,theta,u over the annulus grid, row-major
std::string solution_csv(const MultiGraph& g);
// rho,theta,w
std::string separation_csv(const SeparationProfile& p);
// x,y,z
std::string points_csv(const std::vector<Vec3>& pts);

// inverse of obj/a2 writers, for externally supplied disks
DiskSample disk_from_obj(const std::string& obj_text, const std::string& a2_csv_text,
                         int center_index, const Vec3& ball_center, double r0);
// inverse of solution_csv (grid shape recovered from the row structure)
MultiGraph multigraph_from_csv(const std::string& text);

ordered_json json_report(const SolveReport& r);
ordered_json json_report(const OrderReport& r);
ordered_json json_report(const PairReport& r);
ordered_json json_report(const InitialSeparation& r);
ordered_json json_report(const FitReport& r);
ordered_json json_report(const MeshChecks& r);
ordered_json json_report(const SingularSet& r);
ordered_json json_report(const ConeReport& r);
ordered_json json_report(const LipschitzCurve& r);
ordered_json json_report(const TwoGraphCensus& r);
ordered_json json_report(const OneSidedReport& r);
ordered_json json_report(const FoliationReport& r);

// Records every file written and emits a manifest listing their checksums.
class OutputSet {
 public:
  void write(const std::string& path, const std::string& content);
  void write_json(const std::string& path, const ordered_json& doc);
  void manifest(const std::string& path, const std::string& command,
                const ordered_json& config_echo, double wall_seconds) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;  // path, checksum
};

}  // namespace mindisk::io
