#include "fsbi/io.hpp"

#include <doctest.h>

#include <fstream>

using namespace fsbi;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("fsbi_io_" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

Manifest sample_manifest() {
    Manifest m;
    ManifestEntry e;
    e.image_path = "img/a.png";
    e.video_id = "vid0";
    e.frame_index = 3;
    e.landmarks.points = {{1, 1}, {5, 1}, {3, 6}};
    e.label = 1;
    m.entries.push_back(e);
    e.image_path = "img/b.png";
    e.frame_index = 4;
    e.label.reset();
    m.entries.push_back(e);
    return m;
}

}  // namespace

TEST_CASE("manifest json round trip") {
    TempDir dir;
    fs::path p = dir.path / "manifest.json";
    Manifest m = sample_manifest();
    save_manifest(m, p);
    Manifest back = load_manifest(p);
    REQUIRE(back.entries.size() == 2);
    CHECK(back.base_dir == p.parent_path());
    CHECK(back.entries[0].image_path == "img/a.png");
    CHECK(back.entries[0].video_id == "vid0");
    CHECK(back.entries[0].frame_index == 3);
    CHECK(back.entries[0].landmarks.points.size() == 3);
    CHECK(back.entries[0].label.value() == 1);
    CHECK(!back.entries[1].label.has_value());
    CHECK(back.resolve(back.entries[0]) == dir.path / "img/a.png");
}

TEST_CASE("manifest schema violations") {
    TempDir dir;
    fs::path p = dir.path / "m.json";

    std::ofstream(p) << R"({"entries": []})";
    CHECK_THROWS_AS(load_manifest(p), SchemaError);  // missing format_version

    std::ofstream(p) << R"({"format_version": 1, "entries": [], "extra": 0})";
    CHECK_THROWS_AS(load_manifest(p), SchemaError);

    std::ofstream(p) << R"({"format_version": 1, "entries": [
        {"image_path": "a.png", "video_id": "v", "frame_index": 0,
         "landmarks": [[0,0],[1,0]]}]})";
    CHECK_THROWS_AS(load_manifest(p), SchemaError);  // fewer than 3 landmarks

    std::ofstream(p) << R"({"format_version": 1, "entries": [
        {"image_path": "a.png", "video_id": "v", "frame_index": 0,
         "landmarks": [[0,0],[1,0],[0,1]]},
        {"image_path": "b.png", "video_id": "v", "frame_index": 0,
         "landmarks": [[0,0],[1,0],[0,1]]}]})";
    CHECK_THROWS_AS(load_manifest(p), SchemaError);  // duplicate (video_id, frame)

    CHECK_THROWS_AS(load_manifest(dir.path / "missing.json"), IoError);
}

TEST_CASE("config parsing") {
    Config cfg = parse_config(
        "# a comment\n"
        "seed = 7\n"
        "image_size = 96\n"
        "mix = 0.5\n"
        "wavelet.family = db\n"
        "wavelet.order = 4\n"
        "wavelet.mode = periodic\n"
        "ffg.normalize_dc = false\n"
        "ffg.apply_to_real = false\n"
        "stg.p_each = 0.8\n"
        "mask.erode_radius = 2\n"
        "train.epochs = 42\n");
    CHECK(cfg.seed == 7);
    CHECK(cfg.image_size == 96);
    CHECK(cfg.mix == 0.5);
    CHECK(cfg.ffg.wavelet.family == WaveletFamily::Daubechies);
    CHECK(cfg.ffg.wavelet.order == 4);
    CHECK(cfg.ffg.wavelet.mode == ExtensionMode::Periodic);
    CHECK(!cfg.ffg.normalize_dc);
    CHECK(!cfg.ffg_apply_to_real);
    CHECK(cfg.stg.p_each == 0.8);
    CHECK(cfg.mask.erode_radius == 2);
    CHECK(cfg.train.epochs == 42);

    CHECK_THROWS_AS(parse_config("nonsense.key = 1\n"), SchemaError);
    CHECK_THROWS_AS(parse_config("seed = 1\nseed = 2\n"), SchemaError);
    CHECK_THROWS_AS(parse_config("mix = 1.5\n"), SchemaError);
    CHECK_THROWS_AS(parse_config("seed\n"), SchemaError);
}

TEST_CASE("prediction csv round trip and schema checks") {
    TempDir dir;
    fs::path p = dir.path / "preds.csv";
    std::vector<PredictionRecord> recs{{"v1", 0, 0, 0.123456}, {"v1", 0, 1, 0.9},
                                       {"v2", 5, 0, 0.5}};
    save_predictions_csv(recs, p);
    auto back = load_predictions_csv(p);
    REQUIRE(back.size() == 3);
    CHECK(back[1].confidence == doctest::Approx(0.9).epsilon(1e-9));
    CHECK(back[2].video_id == "v2");
    CHECK(back[2].frame_index == 5);

    std::ofstream(p) << "video_id,frame_index,confidence\nv1,0,0.5\n";
    CHECK_THROWS_AS(load_predictions_csv(p), SchemaError);  // missing column

    std::ofstream(p) << "video_id,frame_index,face_index,confidence\n"
                        "v1,0,0,0.5\nv1,0,0,0.6\n";
    CHECK_THROWS_AS(load_predictions_csv(p), SchemaError);  // duplicate key
}

TEST_CASE("video score and label csvs") {
    TempDir dir;
    fs::path vp = dir.path / "videos.csv";
    std::vector<VideoScore> scores{{"v1", 0.65, 2}, {"v2", 0.5, 0}};
    save_video_scores_csv(scores, vp);
    auto back = load_video_scores_csv(vp);
    REQUIRE(back.size() == 2);
    CHECK(back[0].score == doctest::Approx(0.65).epsilon(1e-9));
    CHECK(back[1].frames_used == 0);

    fs::path lp = dir.path / "labels.csv";
    save_labels_csv({{"v1", 1}, {"v2", 0}}, lp);
    auto labels = load_labels_csv(lp);
    REQUIRE(labels.size() == 2);
    CHECK(labels[0] == std::pair<std::string, int>{"v1", 1});

    std::ofstream(lp) << "video,label\nv1,1\n";
    CHECK_THROWS_AS(load_labels_csv(lp), SchemaError);
}

TEST_CASE("csv files use lf line endings") {
    TempDir dir;
    fs::path p = dir.path / "preds.csv";
    save_predictions_csv({{"v", 0, 0, 0.5}}, p);
    std::ifstream f(p, std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(f)), {});
    CHECK(bytes.find('\r') == std::string::npos);
    CHECK(bytes == "video_id,frame_index,face_index,confidence\nv,0,0,0.500000\n");
}
