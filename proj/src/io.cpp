#include "fsbi/io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fsbi {

namespace {

nlohmann::json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("JSON parse error in '" + path.string() + "': " + e.what());
    }
    return j;
}

void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw SchemaError("unknown field '" + key + "' in " + where);
}

}  // namespace

Manifest load_manifest(const std::filesystem::path& path) {
    nlohmann::json j = read_json(path);
    if (!j.is_object()) throw SchemaError("manifest root must be an object");
    reject_unknown(j, {"format_version", "entries"}, "manifest");
    if (!j.contains("format_version") || !j.contains("entries"))
        throw SchemaError("manifest needs format_version and entries");
    if (j["format_version"].get<int>() != 1) throw SchemaError("unsupported manifest version");

    Manifest m;
    m.base_dir = path.has_parent_path() ? path.parent_path() : ".";
    std::set<std::pair<std::string, std::int64_t>> seen;
    for (const auto& je : j["entries"]) {
        reject_unknown(je, {"image_path", "video_id", "frame_index", "landmarks", "label"},
                       "manifest entry");
        for (const char* key : {"image_path", "video_id", "frame_index", "landmarks"})
            if (!je.contains(key))
                throw SchemaError(std::string("manifest entry missing '") + key + "'");
        ManifestEntry e;
        e.image_path = je["image_path"].get<std::string>();
        e.video_id = je["video_id"].get<std::string>();
        e.frame_index = je["frame_index"].get<std::int64_t>();
        for (const auto& pt : je["landmarks"]) {
            if (!pt.is_array() || pt.size() != 2)
                throw SchemaError("landmark must be an [x, y] pair");
            e.landmarks.points.emplace_back(pt[0].get<double>(), pt[1].get<double>());
        }
        if (e.landmarks.points.size() < 3)
            throw SchemaError("entry '" + e.video_id + "' has fewer than 3 landmarks");
        if (je.contains("label")) {
            int label = je["label"].get<int>();
            if (label != 0 && label != 1) throw SchemaError("label must be 0 or 1");
            e.label = label;
        }
        if (!seen.insert({e.video_id, e.frame_index}).second)
            throw SchemaError("duplicate (video_id, frame_index) in manifest");
        m.entries.push_back(std::move(e));
    }
    return m;
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["entries"] = nlohmann::json::array();
    for (const auto& e : manifest.entries) {
        nlohmann::json je;
        je["image_path"] = e.image_path;
        je["video_id"] = e.video_id;
        je["frame_index"] = e.frame_index;
        je["landmarks"] = nlohmann::json::array();
        for (auto [x, y] : e.landmarks.points) je["landmarks"].push_back({x, y});
        if (e.label) je["label"] = *e.label;
        j["entries"].push_back(std::move(je));
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << j.dump(2) << "\n";
}

namespace {

struct KvFile {
    std::map<std::string, std::string> kv;

    bool has(const std::string& key) const { return kv.count(key) != 0; }

    double number(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        const std::string& s = take(key);
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (const std::logic_error&) {
            throw SchemaError("config key '" + key + "' is not a number: '" + s + "'");
        }
    }

    bool boolean(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const std::string& s = take(key);
        if (s == "true") return true;
        if (s == "false") return false;
        throw SchemaError("config key '" + key + "' must be true or false");
    }

    std::string text(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        return take(key);
    }

    std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
        if (!has(key)) return fallback;
        std::vector<double> out;
        std::istringstream ss(take(key));
        std::string item;
        while (std::getline(ss, item, ','))
            try {
                out.push_back(std::stod(item));
            } catch (const std::logic_error&) {
                throw SchemaError("config key '" + key + "' has a non-numeric item");
            }
        if (out.empty()) throw SchemaError("config key '" + key + "' is empty");
        return out;
    }

    std::string take(const std::string& key) {
        consumed.insert(key);
        return kv.at(key);
    }

    std::set<std::string> consumed;
};

}  // namespace

Config parse_config(const std::string& text) {
    KvFile f;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw SchemaError("config line " + std::to_string(lineno) + " is not key = value");
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key.empty()) throw SchemaError("empty key on config line " + std::to_string(lineno));
        if (!f.kv.emplace(key, value).second)
            throw SchemaError("duplicate config key '" + key + "'");
    }

    Config c;
    c.seed = std::uint64_t(f.number("seed", 0));
    c.image_size = int(f.number("image_size", 380));
    c.mix = f.number("mix", 1.0);
    if (c.mix < 0.0 || c.mix > 1.0) throw SchemaError("mix must be in [0,1]");
    if (c.image_size < 1) throw SchemaError("image_size must be positive");

    c.stg.rgb_shift_max = f.number("stg.rgb_shift_max", c.stg.rgb_shift_max);
    c.stg.hsv_shift_max_h = f.number("stg.hsv_shift_max_h", c.stg.hsv_shift_max_h);
    c.stg.hsv_shift_max_s = f.number("stg.hsv_shift_max_s", c.stg.hsv_shift_max_s);
    c.stg.hsv_shift_max_v = f.number("stg.hsv_shift_max_v", c.stg.hsv_shift_max_v);
    c.stg.brightness_delta_max = f.number("stg.brightness_delta_max", c.stg.brightness_delta_max);
    c.stg.contrast_min = f.number("stg.contrast_min", c.stg.contrast_min);
    c.stg.contrast_max = f.number("stg.contrast_max", c.stg.contrast_max);
    c.stg.translate_max_frac = f.number("stg.translate_max_frac", c.stg.translate_max_frac);
    c.stg.p_each = f.number("stg.p_each", c.stg.p_each);
    c.stg.force_at_least_one = f.boolean("stg.force_at_least_one", c.stg.force_at_least_one);
    {
        std::vector<double> factors = f.numbers("stg.downsample_factors", {2, 4});
        c.stg.downsample_factors.clear();
        for (double v : factors) c.stg.downsample_factors.push_back(int(v));
    }
    if (c.stg.p_each < 0.0 || c.stg.p_each > 1.0)
        throw SchemaError("stg.p_each must be in [0,1]");
    if (c.stg.contrast_min <= 0.0 || c.stg.contrast_max < c.stg.contrast_min)
        throw SchemaError("invalid stg contrast range");

    c.mask.elastic_alpha = f.number("mask.elastic_alpha", c.mask.elastic_alpha);
    c.mask.elastic_sigma = f.number("mask.elastic_sigma", c.mask.elastic_sigma);
    c.mask.blur1_sigma = f.number("mask.blur1_sigma", c.mask.blur1_sigma);
    c.mask.blur2_sigma = f.number("mask.blur2_sigma", c.mask.blur2_sigma);
    c.mask.erode_radius = int(f.number("mask.erode_radius", c.mask.erode_radius));
    c.mask.blend_ratio_choices =
        f.numbers("mask.blend_ratio_choices", c.mask.blend_ratio_choices);
    for (double r : c.mask.blend_ratio_choices)
        if (r <= 0.0 || r > 1.0) throw SchemaError("blend ratios must be in (0,1]");
    if (c.mask.blur1_sigma <= 0.0 || c.mask.blur2_sigma <= 0.0 || c.mask.elastic_sigma <= 0.0)
        throw SchemaError("mask sigmas must be positive");
    if (c.mask.erode_radius < 1) throw SchemaError("mask.erode_radius must be >= 1");

    {
        std::string family = f.text("wavelet.family", "sym");
        std::string order = f.text("wavelet.order", "4");
        auto [fam, ord] = parse_wavelet_name(family == "haar" ? family : family + order);
        c.ffg.wavelet.family = fam;
        c.ffg.wavelet.order = ord;
        c.ffg.wavelet.mode = parse_extension_mode(f.text("wavelet.mode", "reflect"));
    }
    c.ffg.normalize_dc = f.boolean("ffg.normalize_dc", true);
    c.ffg_apply_to_real = f.boolean("ffg.apply_to_real", true);

    c.train.learning_rate = f.number("train.learning_rate", c.train.learning_rate);
    c.train.epochs = int(f.number("train.epochs", c.train.epochs));
    c.train.l2 = f.number("train.l2", c.train.l2);
    if (c.train.learning_rate <= 0.0) throw SchemaError("train.learning_rate must be positive");
    if (c.train.epochs < 1) throw SchemaError("train.epochs must be >= 1");
    if (c.train.l2 < 0.0) throw SchemaError("train.l2 must be >= 0");
    c.train.seed = c.seed;

    for (const auto& [key, value] : f.kv)
        if (!f.consumed.count(key)) throw SchemaError("unknown config key '" + key + "'");
    return c;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               const std::string& expected_header) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string line;
    if (!std::getline(in, line)) throw SchemaError("'" + path.string() + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected_header)
        throw SchemaError("'" + path.string() + "' header must be '" + expected_header + "'");
    std::vector<std::vector<std::string>> rows;
    const std::size_t ncols = std::size_t(std::count(expected_header.begin(),
                                                     expected_header.end(), ',')) + 1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::istringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ',')) cols.push_back(item);
        if (cols.size() != ncols)
            throw SchemaError("'" + path.string() + "' row has wrong column count: " + line);
        rows.push_back(std::move(cols));
    }
    return rows;
}

std::int64_t to_int(const std::string& s, const char* what) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw SchemaError(std::string("bad integer for ") + what + ": '" + s + "'");
    return v;
}

double to_double(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::logic_error&) {
        throw SchemaError(std::string("bad number for ") + what + ": '" + s + "'");
    }
}

}  // namespace

std::vector<PredictionRecord> load_predictions_csv(const std::filesystem::path& path) {
    std::vector<PredictionRecord> out;
    std::set<std::tuple<std::string, std::int64_t, std::int64_t>> seen;
    for (const auto& row : read_csv(path, "video_id,frame_index,face_index,confidence")) {
        PredictionRecord r;
        r.video_id = row[0];
        r.frame_index = to_int(row[1], "frame_index");
        r.face_index = to_int(row[2], "face_index");
        r.confidence = to_double(row[3], "confidence");
        if (r.confidence < 0.0 || r.confidence > 1.0)
            throw SchemaError("confidence out of [0,1]");
        if (!seen.insert({r.video_id, r.frame_index, r.face_index}).second)
            throw SchemaError("duplicate prediction key for video '" + r.video_id + "'");
        out.push_back(std::move(r));
    }
    return out;
}

void save_predictions_csv(const std::vector<PredictionRecord>& records,
                          const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << "video_id,frame_index,face_index,confidence\n";
    char buf[64];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof buf, "%" PRId64 ",%" PRId64 ",%.6f", r.frame_index,
                      r.face_index, r.confidence);
        out << r.video_id << "," << buf << "\n";
    }
}

std::vector<VideoScore> load_video_scores_csv(const std::filesystem::path& path) {
    std::vector<VideoScore> out;
    for (const auto& row : read_csv(path, "video_id,score,frames_used")) {
        VideoScore v;
        v.video_id = row[0];
        v.score = to_double(row[1], "score");
        v.frames_used = to_int(row[2], "frames_used");
        if (v.score < 0.0 || v.score > 1.0) throw SchemaError("score out of [0,1]");
        out.push_back(std::move(v));
    }
    return out;
}

void save_video_scores_csv(const std::vector<VideoScore>& scores,
                           const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << "video_id,score,frames_used\n";
    char buf[64];
    for (const auto& v : scores) {
        std::snprintf(buf, sizeof buf, "%.6f,%" PRId64, v.score, v.frames_used);
        out << v.video_id << "," << buf << "\n";
    }
}

std::vector<std::pair<std::string, int>> load_labels_csv(const std::filesystem::path& path) {
    std::vector<std::pair<std::string, int>> out;
    std::set<std::string> seen;
    for (const auto& row : read_csv(path, "video_id,label")) {
        int label = int(to_int(row[1], "label"));
        if (label != 0 && label != 1) throw SchemaError("label must be 0 or 1");
        if (!seen.insert(row[0]).second)
            throw SchemaError("duplicate video_id '" + row[0] + "' in labels");
        out.emplace_back(row[0], label);
    }
    return out;
}

void save_labels_csv(const std::vector<std::pair<std::string, int>>& labels,
                     const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << "video_id,label\n";
    for (const auto& [id, label] : labels) out << id << "," << label << "\n";
}

}  // namespace fsbi
