#include "fsbi/detector.hpp"
#include "fsbi/ffg.hpp"
#include "fsbi/imaging.hpp"
#include "fsbi/inference.hpp"
#include "fsbi/io.hpp"
#include "fsbi/sbi.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <tuple>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitArgs = 2;
constexpr int kExitIo = 3;
constexpr int kExitPartial = 4;
constexpr int kExitSchema = 5;

struct GlobalOpts {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    int threads = 1;
};

fsbi::Config load_effective_config(const GlobalOpts& g) {
    fsbi::Config cfg;
    std::string path = g.config_path;
    if (path.empty())
        if (const char* env = std::getenv("FSBI_CONFIG")) path = env;
    if (!path.empty()) cfg = fsbi::load_config(path);
    if (g.seed) {
        cfg.seed = *g.seed;
        cfg.train.seed = *g.seed;
    }
    return cfg;
}

// Min-max normalize a plane for display; zero-range planes map to 0.
fsbi::Plane display_normalize(const fsbi::Plane& p) {
    double lo = p.minCoeff(), hi = p.maxCoeff();
    if (hi - lo < 1e-300) return fsbi::Plane::Zero(p.rows(), p.cols());
    return (p - lo) / (hi - lo);
}

json subband_stats(const fsbi::Plane& p) {
    double mu = p.mean();
    return {{"rows", p.rows()},
            {"cols", p.cols()},
            {"min", p.minCoeff()},
            {"max", p.maxCoeff()},
            {"mean", mu},
            {"mean_abs", p.abs().mean()},
            {"std", std::sqrt((p - mu).square().mean())}};
}

int cmd_dwt(const GlobalOpts& g, const std::string& input, const std::string& wavelet_name,
            const std::string& mode_name, const std::string& out_dir) {
    fsbi::Config cfg = load_effective_config(g);
    auto [family, order] = fsbi::parse_wavelet_name(wavelet_name);
    fsbi::WaveletSpec spec{family, order, fsbi::parse_extension_mode(mode_name)};
    const fsbi::FilterBank bank = fsbi::filter_bank(spec);

    fsbi::Image img = fsbi::load_png(input);
    fs::create_directories(out_dir);

    const char* names[4] = {"ll", "lh", "hl", "hh"};
    std::vector<fsbi::Subbands> per_channel;
    for (const fsbi::Plane& p : img.ch)
        per_channel.push_back(fsbi::dwt2d(p, bank, spec.mode));

    json stats;
    stats["wavelet"] = spec.name();
    stats["mode"] = fsbi::extension_mode_name(spec.mode);
    for (int s = 0; s < 4; ++s) {
        fsbi::Image vis;
        json ch_stats = json::array();
        for (const auto& sb : per_channel) {
            const fsbi::Plane& p = s == 0 ? sb.ll : s == 1 ? sb.lh : s == 2 ? sb.hl : sb.hh;
            vis.ch.push_back(display_normalize(p));
            ch_stats.push_back(subband_stats(p));
        }
        stats[names[s]] = std::move(ch_stats);
        fsbi::save_png(vis, (fs::path(out_dir) / (std::string(names[s]) + ".png")).string());
    }

    fsbi::FfgConfig ffg_cfg = cfg.ffg;
    ffg_cfg.wavelet = spec;
    fsbi::Image fused;
    for (const fsbi::Plane& p : img.ch)
        fused.ch.push_back(fsbi::fuse_channel(p, fsbi::channel_frequency_map(p, ffg_cfg)));
    fsbi::save_png(fused, (fs::path(out_dir) / "fused.png").string());

    std::cout << stats.dump(2) << "\n";
    return 0;
}

struct GeneratedEntry {
    fsbi::ManifestEntry entry;
    int video_label = 0;
};

int cmd_generate(const GlobalOpts& g, const std::string& manifest_path,
                 const std::string& out_dir, std::optional<double> mix_flag) {
    fsbi::Config cfg = load_effective_config(g);
    if (mix_flag) cfg.mix = *mix_flag;
    if (cfg.mix < 0.0 || cfg.mix > 1.0) throw fsbi::Error("mix must be in [0,1]");

    fsbi::Manifest manifest = fsbi::load_manifest(manifest_path);
    if (manifest.entries.empty()) throw fsbi::Error("manifest has no entries");
    fs::create_directories(out_dir);

    fsbi::Rng root(cfg.seed);
    fsbi::Manifest out_manifest;
    out_manifest.base_dir = out_dir;
    std::vector<std::pair<std::string, int>> labels;
    int failures = 0;
    int idx = 0;
    for (const auto& entry : manifest.entries) {
        ++idx;
        try {
            fsbi::Image img = fsbi::load_png(manifest.resolve(entry).string());
            if (img.channels() != 3)
                throw fsbi::ChannelMismatch("entry '" + entry.video_id + "' is not RGB");

            const double sx = double(cfg.image_size - 1) /
                              double(std::max<fsbi::Index>(img.width() - 1, 1));
            const double sy = double(cfg.image_size - 1) /
                              double(std::max<fsbi::Index>(img.height() - 1, 1));
            fsbi::Landmarks lm;
            for (auto [x, y] : entry.landmarks.points) lm.points.emplace_back(x * sx, y * sy);
            img = fsbi::resize_bilinear(img, cfg.image_size, cfg.image_size);

            fsbi::Rng rng = root.substream(entry.video_id)
                                .substream(std::uint64_t(entry.frame_index));

            fsbi::Image real = cfg.ffg_apply_to_real ? fsbi::make_fsbi(img, cfg.ffg) : img;
            fsbi::Image fake = fsbi::make_sbi(img, lm, rng, cfg.stg, cfg.mask);
            if (rng.bernoulli(cfg.mix)) fake = fsbi::make_fsbi(fake, cfg.ffg);

            char buf[32];
            std::snprintf(buf, sizeof buf, "%05d", idx);
            std::string real_name = std::string("real_") + buf + ".png";
            std::string fake_name = std::string("fake_") + buf + ".png";
            fsbi::save_png(real, (fs::path(out_dir) / real_name).string());
            fsbi::save_png(fake, (fs::path(out_dir) / fake_name).string());

            for (auto [name, suffix, label] :
                 {std::tuple{real_name, "__real", 0}, std::tuple{fake_name, "__fake", 1}}) {
                fsbi::ManifestEntry oe;
                oe.image_path = name;
                oe.video_id = entry.video_id + suffix;
                oe.frame_index = entry.frame_index;
                oe.landmarks = lm;
                oe.label = label;
                out_manifest.entries.push_back(std::move(oe));
            }
            for (const char* suffix : {"__real", "__fake"}) {
                std::string vid = entry.video_id + suffix;
                if (std::find_if(labels.begin(), labels.end(), [&](const auto& p) {
                        return p.first == vid;
                    }) == labels.end())
                    labels.emplace_back(vid, suffix == std::string("__fake") ? 1 : 0);
            }
        } catch (const fsbi::Error& e) {
            std::cerr << "fsbi: entry " << entry.video_id << ": " << e.what() << "\n";
            ++failures;
        }
    }
    fsbi::save_manifest(out_manifest, fs::path(out_dir) / "manifest.json");
    fsbi::save_labels_csv(labels, fs::path(out_dir) / "labels.csv");
    return failures ? kExitPartial : 0;
}

int cmd_train(const GlobalOpts& g, const std::string& dataset_dir, const std::string& out_path) {
    fsbi::Config cfg = load_effective_config(g);
    fsbi::Manifest manifest = fsbi::load_manifest(fs::path(dataset_dir) / "manifest.json");

    std::vector<std::pair<fsbi::FeatureVector, int>> samples;
    for (const auto& entry : manifest.entries) {
        if (!entry.label) throw fsbi::SchemaError("training entries need labels");
        fsbi::Image img = fsbi::load_png(manifest.resolve(entry).string());
        samples.emplace_back(fsbi::extract_features(img, cfg.ffg.wavelet), *entry.label);
    }
    fsbi::Model model = fsbi::train(samples, cfg.train, cfg.ffg.wavelet);
    fsbi::save_model(model, out_path);
    return 0;
}

int cmd_score(const GlobalOpts& g, const std::string& model_path,
              const std::string& manifest_path, const std::string& out_path) {
    (void)g;
    fsbi::Model model = fsbi::load_model(model_path);
    fsbi::Manifest manifest = fsbi::load_manifest(manifest_path);

    std::vector<fsbi::PredictionRecord> records;
    for (const auto& entry : manifest.entries) {
        fsbi::Image img = fsbi::load_png(manifest.resolve(entry).string());
        fsbi::PredictionRecord r;
        r.video_id = entry.video_id;
        r.frame_index = entry.frame_index;
        r.face_index = 0;
        r.confidence = fsbi::predict(model, img);
        records.push_back(std::move(r));
    }
    fsbi::save_predictions_csv(records, out_path);
    return 0;
}

int cmd_aggregate(const std::string& preds_path, const std::string& out_path) {
    auto records = fsbi::load_predictions_csv(preds_path);
    fsbi::save_video_scores_csv(fsbi::aggregate(records), out_path);
    return 0;
}

int cmd_auc(const std::string& videos_path, const std::string& labels_path) {
    auto scores = fsbi::load_video_scores_csv(videos_path);
    auto labels = fsbi::load_labels_csv(labels_path);
    std::map<std::string, int> label_map(labels.begin(), labels.end());
    std::vector<std::pair<double, int>> scored;
    for (const auto& v : scores) {
        auto it = label_map.find(v.video_id);
        if (it == label_map.end())
            throw fsbi::SchemaError("no label for video '" + v.video_id + "'");
        scored.emplace_back(v.score, it->second);
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", fsbi::auc(scored));
    std::cout << buf << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FSBI pipeline: dataset synthesis, wavelet features, detection, evaluation"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--config", g.config_path, "configuration file (or FSBI_CONFIG)");
    std::uint64_t seed_value = 0;
    auto* seed_opt = app.add_option("--seed", seed_value, "override the config seed");
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);

    auto* dwt = app.add_subcommand("dwt", "decompose a PNG into subband visualizations");
    std::string dwt_input, dwt_wavelet = "sym4", dwt_mode = "reflect", dwt_out;
    dwt->add_option("input", dwt_input, "input PNG")->required();
    dwt->add_option("--wavelet", dwt_wavelet, "wavelet name, e.g. sym4, bior1.3");
    dwt->add_option("--mode", dwt_mode, "extension mode");
    dwt->add_option("--out-dir", dwt_out, "output directory")->required();

    auto* gen = app.add_subcommand("generate", "synthesize a labeled real/fake dataset");
    std::string gen_manifest, gen_out;
    std::optional<double> gen_mix;
    gen->add_option("--manifest", gen_manifest, "input manifest JSON")->required();
    gen->add_option("--out-dir", gen_out, "output dataset directory")->required();
    gen->add_option("--mix", gen_mix, "fraction of fakes passed through the FFG");

    auto* train = app.add_subcommand("train", "train the wavelet-statistic detector");
    std::string train_dataset, train_out;
    train->add_option("--dataset", train_dataset, "dataset directory from generate")->required();
    train->add_option("--out", train_out, "output model JSON")->required();

    auto* score = app.add_subcommand("score", "score manifest images with a model");
    std::string score_model, score_manifest, score_out;
    score->add_option("--model", score_model, "model JSON")->required();
    score->add_option("--manifest", score_manifest, "manifest JSON")->required();
    score->add_option("--out", score_out, "output predictions CSV")->required();

    auto* agg = app.add_subcommand("aggregate", "aggregate face predictions to video scores");
    std::string agg_preds, agg_out;
    agg->add_option("--preds", agg_preds, "predictions CSV")->required();
    agg->add_option("--out", agg_out, "output video-score CSV")->required();

    auto* auc_cmd = app.add_subcommand("auc", "compute AUC from video scores and labels");
    std::string auc_videos, auc_labels;
    auc_cmd->add_option("--videos", auc_videos, "video-score CSV")->required();
    auc_cmd->add_option("--labels", auc_labels, "label CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitArgs;
    }
    if (seed_opt->count()) g.seed = seed_value;

    try {
        if (*dwt) return cmd_dwt(g, dwt_input, dwt_wavelet, dwt_mode, dwt_out);
        if (*gen) return cmd_generate(g, gen_manifest, gen_out, gen_mix);
        if (*train) return cmd_train(g, train_dataset, train_out);
        if (*score) return cmd_score(g, score_model, score_manifest, score_out);
        if (*agg) return cmd_aggregate(agg_preds, agg_out);
        if (*auc_cmd) return cmd_auc(auc_videos, auc_labels);
    } catch (const fsbi::SchemaError& e) {
        std::cerr << "fsbi: " << e.what() << "\n";
        return kExitSchema;
    } catch (const fsbi::IoError& e) {
        std::cerr << "fsbi: " << e.what() << "\n";
        return kExitIo;
    } catch (const fsbi::UnsupportedPngFormat& e) {
        std::cerr << "fsbi: " << e.what() << "\n";
        return kExitIo;
    } catch (const fsbi::Error& e) {
        std::cerr << "fsbi: " << e.what() << "\n";
        return kExitArgs;
    } catch (const std::exception& e) {
        std::cerr << "fsbi: " << e.what() << "\n";
        return kExitArgs;
    }
    return kExitArgs;
}
