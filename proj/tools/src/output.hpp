#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace ndwp::cli {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const fs::path& p);

class Csv {
public:
    explicit Csv(std::vector<std::string> header);
    Csv& row(const std::vector<double>& values);
    Csv& row(const std::vector<std::string>& cells);
    std::string str() const;
    std::size_t rows() const { return rows_; }

private:
    std::string text_;
    std::size_t width_;
    std::size_t rows_ = 0;
};

std::string num(double v);

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool scatter = false;
};

struct HeatmapData {
    std::vector<double> x;       // column centres
    std::vector<double> y;       // row centres
    std::vector<double> values;  // values[iy * x.size() + ix]
};

struct PlotSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    std::vector<Series> series;
    std::vector<double> vlines;  // vertical markers in data units
    std::vector<std::string> vline_labels;
};

std::string svg_plot(const PlotSpec& spec);
std::string svg_heatmap(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                        const HeatmapData& data);

// Collects artefacts for one run and writes them with a manifest at the end.
class RunRecorder {
public:
    RunRecorder(fs::path out_dir, nlohmann::json inputs);
    void write(const std::string& name, const std::string& content);
    void note(const std::string& key, nlohmann::json value);
    void set_cache(const std::string& key, bool hit);
    const fs::path& dir() const { return dir_; }
    const std::vector<std::string>& files() const { return files_; }
    void finish(double seconds);

private:
    fs::path dir_;
    nlohmann::json manifest_;
    std::vector<std::string> files_;
};

}  // namespace ndwp::cli
