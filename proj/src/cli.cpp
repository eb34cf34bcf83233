#include "scargeo/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "scargeo/losses.hpp"
#include "scargeo/metrics.hpp"
#include "scargeo/morphology.hpp"
#include "scargeo/nifti.hpp"
#include "scargeo/phantom.hpp"
#include "scargeo/regions.hpp"
#include "scargeo/report_json.hpp"
#include "scargeo/sdm.hpp"
#include "scargeo/version.hpp"

namespace scargeo::cli {
namespace {

namespace fs = std::filesystem;
using report::Json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Files are first written under a hidden temporary name in the output
// directory and renamed only once every output succeeded. Anything still
// staged when the set is destroyed is removed.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;
  ~OutputSet() {
    for (const auto& [tmp, final_path] : staged_) {
      std::error_code ec;
      fs::remove(tmp, ec);
    }
  }

  fs::path stage(const std::string& name) {
    if (staged_.empty()) fs::create_directories(dir_);
    fs::path tmp = dir_ / (".tmp-" + name);
    staged_.emplace_back(tmp, dir_ / name);
    return tmp;
  }

  void stage_text(const std::string& name, const std::string& text) {
    const fs::path tmp = stage(name);
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw FormatError("cannot write " + tmp.string());
  }

  void commit() {
    for (const auto& [tmp, final_path] : staged_) fs::rename(tmp, final_path);
    staged_.clear();
  }

 private:
  fs::path dir_;
  std::vector<std::pair<fs::path, fs::path>> staged_;
};

struct GeometryOptions {
  double tau_wall = kDefaultTauWallMm;
  double tau_band = kDefaultTauBandMm;
  double clip = kDefaultClipMm;
  std::string se = "disc";
  std::string format = "nifti";
  bool labels_to_binary = false;

  ElementShape shape() const { return se == "ellipsoid" ? ElementShape::ellipsoid : ElementShape::disc; }
  std::string ext() const { return format == "raw" ? ".rawvol" : ".nii.gz"; }
};

struct LossOptions {
  LossConfig cfg;
  std::string region = "effective";
};

void add_tau_wall(CLI::App* sub, GeometryOptions& g) {
  sub->add_option("--tau-wall", g.tau_wall, "Wall band thickness in mm")->capture_default_str();
}
void add_tau_band(CLI::App* sub, GeometryOptions& g) {
  sub->add_option("--tau-band", g.tau_band, "Boundary uncertainty band width in mm")->capture_default_str();
}
void add_clip(CLI::App* sub, GeometryOptions& g) {
  sub->add_option("--clip", g.clip, "SDM clip magnitude in mm")->capture_default_str();
}
void add_se(CLI::App* sub, GeometryOptions& g) {
  sub->add_option("--se", g.se, "Structuring element: disc (in-plane) or ellipsoid (3-D)")
      ->check(CLI::IsMember({"disc", "ellipsoid"}))
      ->capture_default_str();
}
void add_io(CLI::App* sub, GeometryOptions& g) {
  sub->add_option("--format", g.format, "Output volume format")
      ->check(CLI::IsMember({"nifti", "raw"}))
      ->capture_default_str();
  sub->add_flag("--labels-to-binary", g.labels_to_binary, "Map any non-zero mask label to 1");
}
void add_loss(CLI::App* sub, LossOptions& l) {
  sub->add_option("--lambda-dice", l.cfg.lambda_dice, "Dice term weight")->capture_default_str();
  sub->add_option("--lambda-bce", l.cfg.lambda_bce, "Weighted BCE term weight")->capture_default_str();
  sub->add_option("--alpha", l.cfg.alpha, "Global Dice weight")->capture_default_str();
  sub->add_option("--w-max", l.cfg.w_max, "Upper clamp of the positive class weight")->capture_default_str();
  sub->add_option("--eps", l.cfg.epsilon, "Smoothing epsilon")->capture_default_str();
  sub->add_option("--region", l.region, "Loss region: wall ROI or effective region")
      ->check(CLI::IsMember({"wall", "effective"}))
      ->capture_default_str();
}

Json dims_json(const Dims& d) { return Json::array({d.nx, d.ny, d.nz}); }
Json spacing_json(const Spacing& s) {
  return Json::array({report::round9(s.sx), report::round9(s.sy), report::round9(s.sz)});
}

Json geometry_params(const GeometryOptions& g, const Spacing& spacing) {
  Json p;
  p["tau_wall_mm"] = report::number(g.tau_wall);
  p["tau_band_mm"] = report::number(g.tau_band);
  p["clip_mm"] = report::number(g.clip);
  p["se"] = g.se;
  p["wall_radius_voxels"] = wall_radius(spacing, g.tau_wall);
  return p;
}

Json header(const char* command) {
  Json j;
  j["schema"] = report::kSchemaVersion;
  j["command"] = command;
  j["version"] = kVersion;
  return j;
}

LossReport loss_for(const ScalarVolume& logits, const BinaryMask& gt, const BinaryMask& roi, const LossOptions& l,
                    bool with_gradient) {
  LossConfig cfg = l.cfg;
  cfg.region_mode = l.region == "wall" ? RegionMode::wall : RegionMode::effective;
  return total_loss(logits, gt, roi, cfg, with_gradient);
}

// --- subcommands ------------------------------------------------------------

struct SdmArgs {
  std::string cavity, out_dir;
  GeometryOptions g;
  bool raw_mm = false;
};

int cmd_sdm(const SdmArgs& a, std::ostream& out) {
  VolumeFile src = read_volume(a.cavity);
  const BinaryMask cavity = src.to_mask(a.g.labels_to_binary);
  const SdmPair pair = build_sdm_pair(cavity, cavity.spacing(), a.g.tau_wall, a.g.clip, a.g.shape());

  OutputSet outputs(a.out_dir);
  Json j = header("sdm");
  j["params"] = geometry_params(a.g, cavity.spacing());
  j["dims"] = dims_json(cavity.dims());
  j["spacing"] = spacing_json(cavity.spacing());
  Json files;
  auto put = [&](const std::string& key, const ScalarVolume& v) {
    const std::string name = key + a.g.ext();
    write_scalar(outputs.stage(name), v, &src.geometry);
    files[key] = name;
  };
  put("cavity_sdm", pair.cavity_sdm);
  put("wall_sdm", pair.wall_sdm);
  if (a.raw_mm) {
    put("cavity_sdm_mm", pair.cavity_sdm_mm);
    put("wall_sdm_mm", pair.wall_sdm_mm);
  }
  j["outputs"] = files;
  outputs.commit();
  out << report::dump(j);
  return kExitOk;
}

struct MaskArgs {
  std::string cavity, out_dir;
  GeometryOptions g;
};

int cmd_wallband(const MaskArgs& a, std::ostream& out) {
  VolumeFile src = read_volume(a.cavity);
  const BinaryMask cavity = src.to_mask(a.g.labels_to_binary);
  const BinaryMask wall = wall_band(cavity, cavity.spacing(), a.g.tau_wall, a.g.shape());

  OutputSet outputs(a.out_dir);
  const std::string name = "wall" + a.g.ext();
  write_mask(outputs.stage(name), wall, &src.geometry);
  Json j = header("wallband");
  j["params"] = geometry_params(a.g, cavity.spacing());
  j["outputs"] = Json{{"wall", name}};
  j["counts"] = Json{{"cavity", cavity.count()}, {"wall", wall.count()}};
  outputs.commit();
  out << report::dump(j);
  return kExitOk;
}

int cmd_bub(const MaskArgs& a, std::ostream& out) {
  VolumeFile src = read_volume(a.cavity);
  const BinaryMask cavity = src.to_mask(a.g.labels_to_binary);
  const SupervisionRegions r = build_regions(cavity, cavity.spacing(), a.g.tau_wall, a.g.tau_band, a.g.shape());

  OutputSet outputs(a.out_dir);
  Json files;
  Json counts;
  for (const auto& [key, mask] : {std::pair<std::string, const BinaryMask*>{"roi_wall", &r.roi_wall},
                                  {"bub", &r.bub},
                                  {"effective", &r.effective}}) {
    const std::string name = key + a.g.ext();
    write_mask(outputs.stage(name), *mask, &src.geometry);
    files[key] = name;
    counts[key] = mask->count();
  }
  Json j = header("bub");
  j["params"] = geometry_params(a.g, cavity.spacing());
  j["outputs"] = files;
  j["counts"] = counts;
  outputs.commit();
  out << report::dump(j);
  return kExitOk;
}

struct LossArgs {
  std::string logits, gt, roi_wall, effective, grad_out;
  GeometryOptions g;
  LossOptions l;
};

int cmd_loss(const LossArgs& a, std::ostream& out) {
  const std::string& roi_path = a.l.region == "wall" ? a.roi_wall : a.effective;
  if (roi_path.empty()) {
    throw UsageError(a.l.region == "wall" ? "--region wall needs --roi-wall" : "--region effective needs --effective");
  }
  const VolumeFile logit_file = read_volume(a.logits);
  const ScalarVolume logits = logit_file.to_scalar();
  const BinaryMask gt = read_mask(a.gt, a.g.labels_to_binary);
  const BinaryMask roi = read_mask(roi_path, a.g.labels_to_binary);
  const bool with_grad = !a.grad_out.empty();
  const LossReport r = loss_for(logits, gt, roi, a.l, with_grad);
  if (with_grad) {
    const fs::path target(a.grad_out);
    OutputSet outputs(target.has_parent_path() ? target.parent_path() : fs::path("."));
    write_scalar(outputs.stage(target.filename().string()), *r.grad_logits, &logit_file.geometry);
    outputs.commit();
  }
  out << report::dump(report::to_json(r));
  return kExitOk;
}

struct MetricsArgs {
  std::string pred, gt, cavity, wall, assd_roi, cases;
  GeometryOptions g;
};

MetricsReport metrics_for(const std::string& pred, const std::string& gt, const std::string& cavity,
                          const std::string& wall, const std::string& roi, bool labels) {
  const BinaryMask p = read_mask(pred, labels);
  const BinaryMask g = read_mask(gt, labels);
  const BinaryMask c = read_mask(cavity, labels);
  const BinaryMask w = read_mask(wall, labels);
  if (roi.empty()) return evaluate_case(p, g, c, w);
  const BinaryMask r = read_mask(roi, labels);
  return evaluate_case(p, g, c, w, &r);
}

int cmd_metrics(const MetricsArgs& a, std::ostream& out) {
  if (a.cases.empty()) {
    if (a.pred.empty() || a.gt.empty() || a.cavity.empty() || a.wall.empty()) {
      throw UsageError("metrics needs --pred, --gt, --cavity and --wall (or --cases)");
    }
    out << report::dump(report::to_json(metrics_for(a.pred, a.gt, a.cavity, a.wall, a.assd_roi, a.g.labels_to_binary)));
    return kExitOk;
  }

  std::ifstream list(a.cases);
  if (!list) throw FormatError("cannot open case list " + a.cases);
  std::vector<MetricsReport> reports;
  Json cases = Json::array();
  std::string line;
  while (std::getline(list, line)) {
    std::istringstream fields(line);
    std::string pred, gt, cavity, wall, roi;
    if (!(fields >> pred) || pred.front() == '#') continue;
    if (!(fields >> gt >> cavity >> wall)) throw FormatError("case list line needs: pred gt cavity wall [roi]");
    fields >> roi;
    reports.push_back(metrics_for(pred, gt, cavity, wall, roi, a.g.labels_to_binary));
    Json c = report::to_json(reports.back());
    c.erase("schema");
    cases.push_back(Json{{"pred", pred}, {"metrics", c}});
  }
  std::map<std::string, std::vector<std::optional<double>>> columns;
  const char* keys[] = {"dsc", "assd_mm", "centroid_error_mm", "fp_in_cavity_pct", "fp_outside_wall_pct",
                        "fn_inside_wall_pct"};
  for (const MetricsReport& r : reports) {
    columns["dsc"].push_back(r.dsc);
    columns["assd_mm"].push_back(r.assd_mm);
    columns["centroid_error_mm"].push_back(r.centroid_error_mm);
    columns["fp_in_cavity_pct"].push_back(r.anatomical.fp_in_cavity_pct);
    columns["fp_outside_wall_pct"].push_back(r.anatomical.fp_outside_wall_pct);
    columns["fn_inside_wall_pct"].push_back(r.anatomical.fn_inside_wall_pct);
  }
  Json summary;
  for (const char* k : keys) summary[k] = report::to_json(summarize(columns[k]));
  Json j;
  j["schema"] = report::kSchemaVersion;
  j["cases"] = cases;
  j["summary"] = summary;
  out << report::dump(j);
  return kExitOk;
}

struct PhantomArgs {
  std::string out_dir;
  std::vector<std::int64_t> dims;
  std::vector<double> spacing, semi_axes, plant;
  double wall_thickness = 2.0;
  double noise = 0.05;
  std::uint64_t seed = 7;
  GeometryOptions g;
};

int cmd_phantom(const PhantomArgs& a, std::ostream& out) {
  PhantomSpec spec;
  if (!a.dims.empty()) spec.dims = Dims(a.dims[0], a.dims[1], a.dims[2]);
  if (!a.spacing.empty()) spec.spacing = Spacing(a.spacing[0], a.spacing[1], a.spacing[2]);
  if (!a.semi_axes.empty()) spec.semi_axes_mm = {a.semi_axes[0], a.semi_axes[1], a.semi_axes[2]};
  spec.wall_thickness_mm = a.wall_thickness;
  spec.noise_sigma = a.noise;
  spec.seed = a.seed;
  const Phantom ph = generate(spec);

  OutputSet outputs(a.out_dir);
  Json files;
  const std::string ext = a.g.ext();
  write_scalar(outputs.stage("intensity" + ext), ph.intensity);
  files["intensity"] = "intensity" + ext;
  for (const auto& [key, mask] : {std::pair<std::string, const BinaryMask*>{"cavity", &ph.cavity},
                                  {"wall", &ph.wall},
                                  {"scar", &ph.scar}}) {
    write_mask(outputs.stage(key + ext), *mask);
    files[key] = key + ext;
  }
  Json planted;
  if (!a.plant.empty()) {
    for (double v : a.plant) {
      if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        throw UsageError("--plant takes three non-negative integer counts");
      }
    }
    const PlantCounts counts{static_cast<std::size_t>(a.plant[0]), static_cast<std::size_t>(a.plant[1]),
                             static_cast<std::size_t>(a.plant[2])};
    write_mask(outputs.stage("pred" + ext), plant_errors(ph.scar, ph.cavity, ph.wall, counts, spec.seed));
    files["pred"] = "pred" + ext;
    planted = Json{{"fp_in_cavity", counts.fp_in_cavity},
                   {"fp_outside", counts.fp_outside},
                   {"fn_inside", counts.fn_inside}};
  }

  Json side = header("phantom");
  const Point3 c = spec.center();
  Json patches = Json::array();
  for (const ScarPatch& p : spec.patches) {
    patches.push_back(Json{{"azimuth_rad", report::number(p.azimuth_rad)},
                           {"elevation_rad", report::number(p.elevation_rad)},
                           {"half_width_rad", report::number(p.half_width_rad)},
                           {"thickness_fraction", report::number(p.thickness_fraction)}});
  }
  side["spec"] = Json{{"dims", dims_json(spec.dims)},
                      {"spacing", spacing_json(spec.spacing)},
                      {"semi_axes_mm", Json::array({report::round9(spec.semi_axes_mm.x),
                                                    report::round9(spec.semi_axes_mm.y),
                                                    report::round9(spec.semi_axes_mm.z)})},
                      {"center_mm", Json::array({report::round9(c.x), report::round9(c.y), report::round9(c.z)})},
                      {"wall_thickness_mm", report::number(spec.wall_thickness_mm)},
                      {"patches", patches},
                      {"noise_sigma", report::number(spec.noise_sigma)},
                      {"seed", spec.seed}};
  if (!planted.is_null()) side["planted"] = planted;
  side["outputs"] = files;
  side["counts"] = Json{{"cavity", ph.cavity.count()}, {"wall", ph.wall.count()}, {"scar", ph.scar.count()}};
  const std::string text = report::dump(side);
  outputs.stage_text("phantom.json", text);
  outputs.commit();
  out << text;
  return kExitOk;
}

struct PipelineArgs {
  std::string cavity, out_dir, logits, pred, gt;
  GeometryOptions g;
  LossOptions l;
  bool raw_mm = false;
};

int cmd_pipeline(const PipelineArgs& a, std::ostream& out) {
  if (!a.logits.empty() && a.gt.empty()) throw UsageError("--logits needs --gt");
  if (!a.pred.empty() && a.gt.empty()) throw UsageError("--pred needs --gt");

  VolumeFile src = read_volume(a.cavity);
  const BinaryMask cavity = src.to_mask(a.g.labels_to_binary);
  const Spacing& spacing = cavity.spacing();
  const SdmPair pair = build_sdm_pair(cavity, spacing, a.g.tau_wall, a.g.clip, a.g.shape());
  const BinaryMask bub = boundary_uncertainty_band(pair.wall_sdm_mm, a.g.tau_band);
  const BinaryMask effective = effective_region(pair.wall, bub);

  Json j = header("pipeline");
  j["params"] = geometry_params(a.g, spacing);
  j["dims"] = dims_json(cavity.dims());
  j["spacing"] = spacing_json(spacing);

  std::optional<LossReport> loss;
  std::optional<MetricsReport> metrics;
  if (!a.gt.empty()) {
    const BinaryMask gt = read_mask(a.gt, a.g.labels_to_binary);
    if (!a.logits.empty()) {
      const ScalarVolume logits = read_scalar(a.logits);
      loss = loss_for(logits, gt, a.l.region == "wall" ? pair.wall : effective, a.l, false);
    }
    if (!a.pred.empty()) {
      const BinaryMask pred = read_mask(a.pred, a.g.labels_to_binary);
      metrics = evaluate_case(pred, gt, cavity, pair.wall);
    }
  }

  OutputSet outputs(a.out_dir);
  const std::string ext = a.g.ext();
  Json files;
  auto put_volume = [&](const std::string& key, const ScalarVolume& v) {
    write_scalar(outputs.stage(key + ext), v, &src.geometry);
    files[key] = key + ext;
  };
  auto put_mask = [&](const std::string& key, const BinaryMask& m) {
    write_mask(outputs.stage(key + ext), m, &src.geometry);
    files[key] = key + ext;
  };
  put_volume("cavity_sdm", pair.cavity_sdm);
  put_volume("wall_sdm", pair.wall_sdm);
  put_mask("roi_wall", pair.wall);
  put_mask("bub", bub);
  put_mask("effective", effective);
  if (a.raw_mm) {
    put_volume("cavity_sdm_mm", pair.cavity_sdm_mm);
    put_volume("wall_sdm_mm", pair.wall_sdm_mm);
  }
  files["manifest"] = "manifest.json";
  j["outputs"] = files;
  j["counts"] = Json{{"cavity", cavity.count()},
                     {"roi_wall", pair.wall.count()},
                     {"bub", bub.count()},
                     {"effective", effective.count()}};
  if (loss) {
    Json lj = report::to_json(*loss);
    lj.erase("schema");
    lj["region"] = a.l.region;
    j["loss"] = lj;
  }
  if (metrics) {
    Json mj = report::to_json(*metrics);
    mj.erase("schema");
    j["metrics"] = mj;
  }
  const std::string text = report::dump(j);
  outputs.stage_text("manifest.json", text);
  outputs.commit();
  out << text;
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anatomy-guided geometry, supervision regions, losses and metrics for atrial scar segmentation"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  SdmArgs sdm;
  auto* sdm_cmd = app.add_subcommand("sdm", "Cavity and wall signed distance maps");
  sdm_cmd->add_option("--cavity", sdm.cavity, "Cavity mask")->required();
  sdm_cmd->add_option("--out-dir", sdm.out_dir, "Output directory")->required();
  sdm_cmd->add_flag("--raw-mm", sdm.raw_mm, "Also write the unnormalized SDMs in mm");
  add_tau_wall(sdm_cmd, sdm.g);
  add_clip(sdm_cmd, sdm.g);
  add_se(sdm_cmd, sdm.g);
  add_io(sdm_cmd, sdm.g);

  MaskArgs wb;
  auto* wb_cmd = app.add_subcommand("wallband", "Wall band around a cavity mask");
  wb_cmd->add_option("--cavity", wb.cavity, "Cavity mask")->required();
  wb_cmd->add_option("--out-dir", wb.out_dir, "Output directory")->required();
  add_tau_wall(wb_cmd, wb.g);
  add_se(wb_cmd, wb.g);
  add_io(wb_cmd, wb.g);

  MaskArgs bub;
  auto* bub_cmd = app.add_subcommand("bub", "Wall ROI, boundary uncertainty band and effective region");
  bub_cmd->add_option("--cavity", bub.cavity, "Cavity mask")->required();
  bub_cmd->add_option("--out-dir", bub.out_dir, "Output directory")->required();
  add_tau_wall(bub_cmd, bub.g);
  add_tau_band(bub_cmd, bub.g);
  add_se(bub_cmd, bub.g);
  add_io(bub_cmd, bub.g);

  LossArgs loss;
  auto* loss_cmd = app.add_subcommand("loss", "ROI-masked loss report for a logit volume");
  loss_cmd->add_option("--logits", loss.logits, "Logit volume")->required();
  loss_cmd->add_option("--gt", loss.gt, "Ground-truth scar mask")->required();
  loss_cmd->add_option("--roi-wall", loss.roi_wall, "Wall ROI mask");
  loss_cmd->add_option("--effective", loss.effective, "Effective region mask");
  loss_cmd->add_option("--grad-out", loss.grad_out, "Write d(total)/d(logits) to this volume");
  loss_cmd->add_flag("--labels-to-binary", loss.g.labels_to_binary, "Map any non-zero mask label to 1");
  add_loss(loss_cmd, loss.l);

  MetricsArgs met;
  auto* met_cmd = app.add_subcommand("metrics", "Segmentation and anatomical error metrics");
  met_cmd->add_option("--pred", met.pred, "Predicted scar mask");
  met_cmd->add_option("--gt", met.gt, "Ground-truth scar mask");
  met_cmd->add_option("--cavity", met.cavity, "Cavity mask");
  met_cmd->add_option("--wall", met.wall, "Wall mask");
  met_cmd->add_option("--assd-roi", met.assd_roi, "Restrict ASSD to this mask");
  met_cmd->add_option("--cases", met.cases, "Batch file, one 'pred gt cavity wall [roi]' per line");
  met_cmd->add_flag("--labels-to-binary", met.g.labels_to_binary, "Map any non-zero mask label to 1");

  PhantomArgs ph;
  auto* ph_cmd = app.add_subcommand("phantom", "Synthetic atrium phantom with analytic ground truth");
  ph_cmd->add_option("--out-dir", ph.out_dir, "Output directory")->required();
  ph_cmd->add_option("--seed", ph.seed, "Noise and planting seed")->capture_default_str();
  ph_cmd->add_option("--dims", ph.dims, "Grid size nx ny nz")->expected(3);
  ph_cmd->add_option("--spacing", ph.spacing, "Voxel spacing sx sy sz in mm")->expected(3);
  ph_cmd->add_option("--semi-axes", ph.semi_axes, "Cavity semi-axes in mm")->expected(3);
  ph_cmd->add_option("--wall-thickness", ph.wall_thickness, "Wall shell thickness in mm")->capture_default_str();
  ph_cmd->add_option("--noise", ph.noise, "Gaussian noise sigma")->capture_default_str();
  ph_cmd->add_option("--plant", ph.plant, "Also write pred with planted errors: fp_cavity fp_outside fn_wall")
      ->expected(3);
  ph_cmd->add_option("--format", ph.g.format, "Output volume format")
      ->check(CLI::IsMember({"nifti", "raw"}))
      ->capture_default_str();

  PipelineArgs pipe;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Cavity mask to SDM pair and supervision regions");
  pipe_cmd->add_option("--cavity", pipe.cavity, "Cavity mask (stage-1 prediction)")->required();
  pipe_cmd->add_option("--out-dir", pipe.out_dir, "Output directory")->required();
  pipe_cmd->add_option("--logits", pipe.logits, "Scar logits; with --gt adds a loss report");
  pipe_cmd->add_option("--pred", pipe.pred, "Scar prediction mask; with --gt adds metrics");
  pipe_cmd->add_option("--gt", pipe.gt, "Ground-truth scar mask");
  pipe_cmd->add_flag("--raw-mm", pipe.raw_mm, "Also write the unnormalized SDMs in mm");
  add_tau_wall(pipe_cmd, pipe.g);
  add_tau_band(pipe_cmd, pipe.g);
  add_clip(pipe_cmd, pipe.g);
  add_se(pipe_cmd, pipe.g);
  add_io(pipe_cmd, pipe.g);
  add_loss(pipe_cmd, pipe.l);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*sdm_cmd) return cmd_sdm(sdm, out);
    if (*wb_cmd) return cmd_wallband(wb, out);
    if (*bub_cmd) return cmd_bub(bub, out);
    if (*loss_cmd) return cmd_loss(loss, out);
    if (*met_cmd) return cmd_metrics(met, out);
    if (*ph_cmd) return cmd_phantom(ph, out);
    if (*pipe_cmd) return cmd_pipeline(pipe, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace scargeo::cli
