#include "fsbi/inference.hpp"

#include <algorithm>
#include <map>

namespace fsbi {

std::vector<std::int64_t> sample_frames(std::int64_t total_frames, std::int64_t k) {
    if (total_frames < 1 || k < 1) throw Error("sample_frames needs positive counts");
    std::vector<std::int64_t> out;
    if (total_frames <= k) {
        for (std::int64_t i = 0; i < total_frames; ++i) out.push_back(i);
        return out;
    }
    for (std::int64_t i = 0; i < k; ++i) {
        std::int64_t idx = i * total_frames / k;
        if (out.empty() || idx != out.back()) out.push_back(idx);
    }
    return out;
}

std::optional<double> frame_score(const std::vector<double>& face_confidences) {
    if (face_confidences.empty()) return std::nullopt;
    return *std::max_element(face_confidences.begin(), face_confidences.end());
}

VideoScore video_score(const std::string& video_id, const std::vector<double>& frame_scores) {
    VideoScore vs;
    vs.video_id = video_id;
    vs.frames_used = std::int64_t(frame_scores.size());
    if (frame_scores.empty()) {
        vs.score = 0.5;
        return vs;
    }
    double sum = 0.0;
    for (double s : frame_scores) sum += s;
    vs.score = sum / double(frame_scores.size());
    return vs;
}

std::vector<VideoScore> aggregate(const std::vector<PredictionRecord>& predictions) {
    // video -> frame -> face confidences; keyed maps keep output ordering
    // independent of input order.
    std::map<std::string, std::map<std::int64_t, std::vector<double>>> by_video;
    for (const auto& p : predictions)
        by_video[p.video_id][p.frame_index].push_back(p.confidence);

    std::vector<VideoScore> out;
    for (const auto& [video_id, frames] : by_video) {
        std::vector<double> frame_scores;
        for (const auto& [frame_idx, faces] : frames)
            if (auto s = frame_score(faces)) frame_scores.push_back(*s);
        out.push_back(video_score(video_id, frame_scores));
    }
    return out;
}

double auc(const std::vector<std::pair<double, int>>& scored) {
    std::vector<double> pos, neg;
    for (const auto& [s, y] : scored) (y ? pos : neg).push_back(s);
    if (pos.empty() || neg.empty())
        throw SingleClassData("AUC needs both positive and negative labels");

    // Rank-based Mann-Whitney with midranks for ties.
    std::vector<std::pair<double, int>> all(scored);
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < all.size()) {
        std::size_t j = i;
        while (j < all.size() && all[j].first == all[i].first) ++j;
        double midrank = 0.5 * double(i + 1 + j);  // ranks are 1-based
        for (std::size_t t = i; t < j; ++t)
            if (all[t].second) rank_sum_pos += midrank;
        i = j;
    }
    const double np = double(pos.size()), nn = double(neg.size());
    return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

}  // namespace fsbi
