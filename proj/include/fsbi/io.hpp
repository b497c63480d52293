#pragma once

#include "fsbi/detector.hpp"
#include "fsbi/ffg.hpp"
#include "fsbi/inference.hpp"
#include "fsbi/sbi.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fsbi {

struct ManifestEntry {
    std::string image_path;
    std::string video_id;
    std::int64_t frame_index = 0;
    Landmarks landmarks;
    std::optional<int> label;
};

struct Manifest {
    std::vector<ManifestEntry> entries;
    std::filesystem::path base_dir;  // image paths resolve against this

    std::filesystem::path resolve(const ManifestEntry& e) const {
        std::filesystem::path p(e.image_path);
        return p.is_absolute() ? p : base_dir / p;
    }
};

// Strict JSON schema: format_version plus entries; unknown or missing
// required fields throw SchemaError.
Manifest load_manifest(const std::filesystem::path& path);
void save_manifest(const Manifest& manifest, const std::filesystem::path& path);

// Pipeline configuration, a flat dotted-key text file.
struct Config {
    StgConfig stg;
    MaskConfig mask;
    FfgConfig ffg;
    TrainConfig train;
    std::uint64_t seed = 0;
    int image_size = 380;
    double mix = 1.0;           // fraction of fakes that get the FFG pass
    bool ffg_apply_to_real = true;
};

Config parse_config(const std::string& text);
Config load_config(const std::filesystem::path& path);

// CSV schemas; headers are mandatory and checked verbatim.
std::vector<PredictionRecord> load_predictions_csv(const std::filesystem::path& path);
void save_predictions_csv(const std::vector<PredictionRecord>& records,
                          const std::filesystem::path& path);
std::vector<VideoScore> load_video_scores_csv(const std::filesystem::path& path);
void save_video_scores_csv(const std::vector<VideoScore>& scores,
                           const std::filesystem::path& path);
std::vector<std::pair<std::string, int>> load_labels_csv(const std::filesystem::path& path);
void save_labels_csv(const std::vector<std::pair<std::string, int>>& labels,
                     const std::filesystem::path& path);

}  // namespace fsbi
