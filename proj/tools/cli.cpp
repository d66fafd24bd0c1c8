#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "dmt/dmt.hpp"

namespace dmt::cli {
namespace {

using Json = nlohmann::ordered_json;

/// Input/usage problems discovered after argument parsing.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string in, out, labels_out, pred, gt;
  std::string format = "auto";
  double eps = 0.2;
  double beta = 3.0;
  double threshold = 0.5;
  double clamp = 1e-7;
  bool no_s1 = false;
  bool no_s2 = false;
  std::optional<std::uint64_t> seed;
  std::size_t n_patches = 100;
  std::vector<std::size_t> patch;
  std::optional<int> betti_dim;
  std::string polarity = "superlevel";
  std::string method = "reduce";
};

ScalarField load(const std::string& path, const char* role) {
  if (!std::filesystem::exists(path)) throw DataError(std::string(role) + " file not found: " + path);
  try {
    return read_field(path);
  } catch (const FormatError& e) {
    throw DataError(path + ": " + e.what());
  } catch (const ShapeError& e) {
    throw DataError(path + ": " + e.what());
  }
}

FileFormat output_format(const Options& o, const std::string& path) {
  if (o.format == "pgm") return FileFormat::pgm;
  if (o.format == "dmtf") return FileFormat::dmtf;
  return format_from_path(path);
}

void require_same_shape(const ScalarField& f, const ScalarField& g) {
  if (!(f.shape() == g.shape())) {
    throw DataError("shape mismatch: --pred is " + f.shape().to_string() + ", --gt is " + g.shape().to_string());
  }
}

void check_pgm_target(const Options& o, const ScalarField& f, const std::string& path) {
  if (output_format(o, path) == FileFormat::pgm && f.ndim() != 2) {
    throw DataError("PGM output requires a 2D field, input is " + f.shape().to_string());
  }
}

LossConfig loss_config(const Options& o) {
  LossConfig cfg;
  cfg.eps = o.eps;
  cfg.beta = o.beta;
  cfg.clamp = o.clamp;
  cfg.include_s1 = !o.no_s1;
  cfg.include_s2 = !o.no_s2;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }
  return cfg;
}

unsigned thread_cap() {
  if (const char* env = std::getenv("DMT_THREADS")) {
    char* end = nullptr;
    auto n = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return 0;
}

void cmd_skeleton(const Options& o, std::ostream& out) {
  auto f = load(o.in, "--in");
  check_pgm_target(o, f, o.out);
  auto result = extract_skeleton(f, o.eps);
  write_mask(result.mask, o.out, output_format(o, o.out));
  Json j;
  j["eps"] = o.eps;
  j["n_s1"] = result.structures;
  j["cancelled"] = result.stats.cancelled;
  j["skipped"] = result.stats.skipped;
  j["mask_density"] = static_cast<double>(result.mask.count()) / static_cast<double>(result.mask.size());
  out << j.dump() << '\n';
}

void cmd_basins(const Options& o, std::ostream& out) {
  auto f = load(o.in, "--in");
  check_pgm_target(o, f, o.out);
  auto labeling = basin_labels(f, o.eps);
  auto mask = boundary_mask(labeling);
  write_field(label_field(labeling), o.labels_out);
  try {
    write_mask(mask, o.out, output_format(o, o.out));
  } catch (...) {
    std::filesystem::remove(o.labels_out);
    throw;
  }
  Json j;
  j["eps"] = o.eps;
  j["n_basins"] = labeling.basin_count();
  j["n_separating_edges"] = labeling.separating_edges.size();
  out << j.dump() << '\n';
}

void cmd_mask(const Options& o, std::ostream& out) {
  auto f = load(o.in, "--in");
  check_pgm_target(o, f, o.out);
  auto m = compute_morse_mask(f, loss_config(o));
  write_mask(m.mask, o.out, output_format(o, o.out));
  Json j;
  j["eps"] = o.eps;
  j["n_s1"] = m.n_s1;
  j["n_basins"] = m.n_basins;
  j["mask_density"] = static_cast<double>(m.mask.count()) / static_cast<double>(m.mask.size());
  out << j.dump() << '\n';
}

void cmd_loss(const Options& o, std::ostream& out) {
  auto f = load(o.pred, "--pred");
  auto g = load(o.gt, "--gt");
  require_same_shape(f, g);
  auto cfg = loss_config(o);
  LossReport r;
  try {
    r = total_loss(f, g, cfg);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("--gt: ") + e.what());
  }
  Json j;
  j["l_bce"] = r.l_bce;
  j["l_dmt"] = r.l_dmt;
  j["beta"] = r.beta;
  j["total"] = r.total;
  j["mask_density"] = r.mask_density;
  j["n_s1"] = r.n_s1;
  j["n_basins"] = r.n_basins;
  out << j.dump() << '\n';
}

void cmd_metrics(const Options& o, std::ostream& out) {
  auto f = load(o.pred, "--pred");
  auto g = load(o.gt, "--gt");
  require_same_shape(f, g);
  auto seg = binarize(f, o.threshold);
  auto gt = binarize(g, o.threshold);

  BettiErrorOptions bopt;
  bopt.patch = o.patch;
  bopt.n_patches = o.n_patches;
  bopt.seed = *o.seed;
  bopt.dim = o.betti_dim;
  bopt.threads = thread_cap();
  double betti = 0.0;
  try {
    betti = betti_error(seg, gt, bopt);
  } catch (const ShapeError& e) {
    throw DataError(std::string("--patch: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(e.what());
  }

  auto da = dice_and_accuracy(seg, gt);
  auto seg_regions = region_labeling(seg);
  auto gt_regions = region_labeling(gt);
  Json j;
  j["accuracy"] = da.accuracy;
  j["dice"] = da.dice;
  try {
    j["ari"] = ari(seg_regions, gt_regions);
    j["voi"] = voi(seg_regions, gt_regions);
  } catch (const UndefinedMetric&) {
    j["ari"] = nullptr;
    j["voi"] = nullptr;
  }
  j["betti_error"] = betti;
  j["seed"] = *o.seed;
  j["n_patches"] = o.n_patches;
  out << j.dump() << '\n';
}

void cmd_persistence(const Options& o, std::ostream& out) {
  auto f = load(o.in, "--in");
  auto polarity = o.polarity == "sublevel" ? Polarity::sublevel : Polarity::superlevel;
  auto pairs = o.method == "union-find" ? zero_dim_pairs(f, polarity) : reduce(build_filtration(f, polarity));
  auto coords = [](const CellId& c) {
    return std::vector<std::int64_t>(c.coords.begin(), c.coords.begin() + c.ndim);
  };
  for (const auto& p : pairs) {
    Json j;
    j["birth"] = coords(p.birth);
    j["death"] = p.death ? Json(coords(*p.death)) : Json(nullptr);
    j["pers"] = p.essential() ? Json(nullptr) : Json(p.persistence);
    j["dim"] = p.dim;
    out << j.dump() << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete-Morse critical structures, DMT loss and topology-aware metrics"};
  app.name("dmt");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options o;

  auto add_eps = [&](CLI::App* c) {
    c->add_option("--eps", o.eps, "persistence threshold")->capture_default_str()->check(CLI::NonNegativeNumber);
  };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"auto", "dmtf", "pgm"}));
  };
  auto add_parts = [&](CLI::App* c) {
    c->add_flag("--no-s1", o.no_s1, "exclude the ridge skeleton S1");
    c->add_flag("--no-s2", o.no_s2, "exclude the basin boundaries S2");
  };

  auto* skeleton = app.add_subcommand("skeleton", "write the pruned 1-skeleton mask S1(eps)");
  skeleton->add_option("--in", o.in, "likelihood field (.dmtf or .pgm)")->required();
  skeleton->add_option("--out", o.out, "output mask")->required();
  add_eps(skeleton);
  add_format(skeleton);

  auto* basins = app.add_subcommand("basins", "write basin labels and the basin-boundary mask S2(eps)");
  basins->add_option("--in", o.in, "likelihood field")->required();
  basins->add_option("--labels-out", o.labels_out, "basin id field (DMTF)")->required();
  basins->add_option("--out", o.out, "boundary mask")->required();
  add_eps(basins);
  add_format(basins);

  auto* mask = app.add_subcommand("mask", "write the Morse mask S1(eps) | S2(eps)");
  mask->add_option("--in", o.in, "likelihood field")->required();
  mask->add_option("--out", o.out, "output mask")->required();
  add_eps(mask);
  add_parts(mask);
  add_format(mask);

  auto* loss = app.add_subcommand("loss", "print L_bce, L_dmt and the total loss as JSON");
  loss->add_option("--pred", o.pred, "likelihood field")->required();
  loss->add_option("--gt", o.gt, "binary ground truth")->required();
  add_eps(loss);
  loss->add_option("--beta", o.beta, "weight of L_dmt")->capture_default_str()->check(CLI::NonNegativeNumber);
  loss->add_option("--clamp", o.clamp, "likelihood clipping for logs")->capture_default_str();
  add_parts(loss);

  auto* metrics = app.add_subcommand("metrics", "print accuracy, DICE, ARI, VOI and Betti error as JSON");
  metrics->add_option("--pred", o.pred, "predicted likelihood or binary segmentation")->required();
  metrics->add_option("--gt", o.gt, "binary ground truth")->required();
  metrics->add_option("--threshold", o.threshold, "binarization threshold (strict >)")->capture_default_str();
  metrics->add_option("--seed", o.seed, "seed for patch sampling")->required();
  metrics->add_option("--n-patches", o.n_patches, "number of Betti patches")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  metrics->add_option("--patch", o.patch, "patch extents per axis (default 64^2 / 48^3, capped)")->expected(2, 3);
  metrics->add_option("--betti-dim", o.betti_dim, "Betti index compared (default 1 in 2D, 2 in 3D)");

  auto* persistence = app.add_subcommand("persistence", "print persistence pairs as JSON lines");
  persistence->add_option("--in", o.in, "scalar field")->required();
  persistence->add_option("--polarity", o.polarity, "filtration direction")
      ->capture_default_str()
      ->check(CLI::IsMember({"superlevel", "sublevel"}));
  persistence->add_option("--method", o.method, "reduce: all dimensions; union-find: dimension 0 only")
      ->capture_default_str()
      ->check(CLI::IsMember({"reduce", "union-find"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "dmt: " << e.what() << '\n';
    return kUsage;
  }

  try {
    std::ostringstream buffer;
    if (skeleton->parsed()) cmd_skeleton(o, buffer);
    if (basins->parsed()) cmd_basins(o, buffer);
    if (mask->parsed()) cmd_mask(o, buffer);
    if (loss->parsed()) cmd_loss(o, buffer);
    if (metrics->parsed()) cmd_metrics(o, buffer);
    if (persistence->parsed()) cmd_persistence(o, buffer);
    out << buffer.str();
    return kOk;
  } catch (const DataError& e) {
    err << "dmt: " << e.what() << '\n';
  } catch (const IoError& e) {
    err << "dmt: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "dmt: " << e.what() << '\n';
  }
  return kData;
}

}  // namespace dmt::cli
