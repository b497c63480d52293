#pragma once

#include "fsbi/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fsbi {

struct PredictionRecord {
    std::string video_id;
    std::int64_t frame_index = 0;
    std::int64_t face_index = 0;
    double confidence = 0.0;
};

struct VideoScore {
    std::string video_id;
    double score = 0.0;
    std::int64_t frames_used = 0;
};

// k uniformly spaced frame indices floor(i * total / k); all frames when the
// video is shorter than k.
std::vector<std::int64_t> sample_frames(std::int64_t total_frames, std::int64_t k = 32);

// Max over faces; empty frames carry no score.
std::optional<double> frame_score(const std::vector<double>& face_confidences);

// Mean over available frame scores, 0.5 for fully faceless videos.
VideoScore video_score(const std::string& video_id,
                       const std::vector<double>& frame_scores);

// Groups predictions by video, max over faces within a frame, mean over frames.
std::vector<VideoScore> aggregate(const std::vector<PredictionRecord>& predictions);

// Mann-Whitney AUC, ties credited one half. Throws SingleClassData unless both
// labels are present.
double auc(const std::vector<std::pair<double, int>>& scored);

}  // namespace fsbi
