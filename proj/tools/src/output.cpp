#include "output.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace ndwp::cli {

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string sha256_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return sha256_hex(buf.str());
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char b[32];
    std::snprintf(b, sizeof b, "%.12g", v);
    return b;
}

Csv::Csv(std::vector<std::string> header) : width_(header.size()) { row(header); rows_ = 0; }

Csv& Csv::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) text_ += (i ? "," : "") + cells[i];
    text_ += "\n";
    ++rows_;
    return *this;
}

Csv& Csv::row(const std::vector<double>& values) {
    std::vector<std::string> c;
    c.reserve(values.size());
    for (double v : values) c.push_back(num(v));
    return row(c);
}

std::string Csv::str() const { return text_; }

namespace {

constexpr double W = 720, H = 480, ML = 80, MR = 30, MT = 40, MB = 60;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string esc(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '<') o += "&lt;";
        else if (c == '>') o += "&gt;";
        else if (c == '&') o += "&amp;";
        else o += c;
    }
    return o;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    void add(double v) {
        if (!std::isfinite(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void finish() {
        if (!(hi >= lo)) lo = 0, hi = 1;
        if (hi == lo) {
            const double d = lo == 0 ? 1 : 0.05 * std::abs(lo);
            lo -= d;
            hi += d;
        }
    }
};

std::vector<double> ticks(double lo, double hi) {
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double r = raw / mag;
    const double step = (r < 1.5 ? 1 : r < 3 ? 2 : r < 7 ? 5 : 10) * mag;
    std::vector<double> t;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) t.push_back(std::abs(v) < 1e-12 * step ? 0 : v);
    return t;
}

std::string frame(const std::string& title, const std::string& xl, const std::string& yl, const Range& xr,
                  const Range& yr) {
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << " " << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << esc(title) << "</text>\n";
    s << "<rect x=\"" << ML << "\" y=\"" << MT << "\" width=\"" << W - ML - MR << "\" height=\"" << H - MT - MB
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    const double pw = W - ML - MR, ph = H - MT - MB;
    for (double t : ticks(xr.lo, xr.hi)) {
        const double x = ML + (t - xr.lo) / (xr.hi - xr.lo) * pw;
        s << "<line x1=\"" << x << "\" y1=\"" << H - MB << "\" x2=\"" << x << "\" y2=\"" << H - MB + 5
          << "\" stroke=\"black\"/><text x=\"" << x << "\" y=\"" << H - MB + 18 << "\" text-anchor=\"middle\">"
          << num(t) << "</text>\n";
    }
    for (double t : ticks(yr.lo, yr.hi)) {
        const double y = H - MB - (t - yr.lo) / (yr.hi - yr.lo) * ph;
        s << "<line x1=\"" << ML - 5 << "\" y1=\"" << y << "\" x2=\"" << ML << "\" y2=\"" << y
          << "\" stroke=\"black\"/><text x=\"" << ML - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << num(t)
          << "</text>\n";
    }
    s << "<text x=\"" << ML + pw / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">" << esc(xl) << "</text>\n";
    s << "<text transform=\"translate(18," << MT + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">" << esc(yl)
      << "</text>\n";
    return s.str();
}

}  // namespace

std::string svg_plot(const PlotSpec& spec) {
    Range xr, yr;
    for (const auto& s : spec.series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            xr.add(s.x[i]);
            yr.add(s.y[i]);
        }
    xr.finish();
    yr.finish();
    const double pw = W - ML - MR, ph = H - MT - MB;
    auto px = [&](double x) { return ML + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double y) { return H - MB - (y - yr.lo) / (yr.hi - yr.lo) * ph; };
    std::ostringstream s;
    s << frame(spec.title, spec.xlabel, spec.ylabel, xr, yr);
    for (std::size_t k = 0; k < spec.series.size(); ++k) {
        const auto& se = spec.series[k];
        const char* col = kColors[k % 8];
        if (se.scatter) {
            s << "<g fill=\"" << col << "\">\n";
            for (std::size_t i = 0; i < se.x.size(); ++i)
                if (std::isfinite(se.x[i]) && std::isfinite(se.y[i]))
                    s << "<circle cx=\"" << num(px(se.x[i])) << "\" cy=\"" << num(py(se.y[i])) << "\" r=\"1.2\"/>\n";
            s << "</g>\n";
        } else {
            s << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.2\" points=\"";
            for (std::size_t i = 0; i < se.x.size(); ++i)
                if (std::isfinite(se.x[i]) && std::isfinite(se.y[i])) s << num(px(se.x[i])) << "," << num(py(se.y[i])) << " ";
            s << "\"/>\n";
        }
        if (!se.label.empty())
            s << "<text x=\"" << W - MR - 10 << "\" y=\"" << MT + 16 + 15 * k << "\" text-anchor=\"end\" fill=\"" << col
              << "\">" << esc(se.label) << "</text>\n";
    }
    for (std::size_t k = 0; k < spec.vlines.size(); ++k) {
        const double x = px(spec.vlines[k]);
        if (x < ML || x > W - MR) continue;
        s << "<line x1=\"" << num(x) << "\" y1=\"" << MT << "\" x2=\"" << num(x) << "\" y2=\"" << H - MB
          << "\" stroke=\"gray\" stroke-dasharray=\"4,3\"/>\n";
        if (k < spec.vline_labels.size())
            s << "<text x=\"" << num(x + 3) << "\" y=\"" << MT + 12 << "\" fill=\"gray\">" << esc(spec.vline_labels[k])
              << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::string svg_heatmap(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                        const HeatmapData& d) {
    if (d.values.size() != d.x.size() * d.y.size() || d.x.empty() || d.y.empty())
        throw std::logic_error("heatmap shape mismatch");
    Range xr, yr, vr;
    for (double v : d.x) xr.add(v);
    for (double v : d.y) yr.add(v);
    for (double v : d.values) vr.add(v);
    xr.finish();
    yr.finish();
    vr.finish();
    const double pw = W - ML - MR, ph = H - MT - MB;
    const double cw = pw / d.x.size(), ch = ph / d.y.size();
    std::ostringstream s;
    s << frame(title, xlabel, ylabel, xr, yr);
    for (std::size_t iy = 0; iy < d.y.size(); ++iy)
        for (std::size_t ix = 0; ix < d.x.size(); ++ix) {
            const double v = d.values[iy * d.x.size() + ix];
            const double t = std::isfinite(v) ? (v - vr.lo) / (vr.hi - vr.lo) : 0.0;
            // Blue to yellow ramp.
            const int r = static_cast<int>(255 * std::clamp(1.6 * t - 0.3, 0.0, 1.0));
            const int g = static_cast<int>(255 * std::clamp(t, 0.0, 1.0));
            const int b = static_cast<int>(255 * std::clamp(1.0 - 1.4 * t, 0.0, 1.0) * 0.8 + 30 * (1 - t));
            char col[8];
            std::snprintf(col, sizeof col, "#%02x%02x%02x", r, g, std::min(b, 255));
            s << "<rect x=\"" << num(ML + ix * cw) << "\" y=\"" << num(H - MB - (iy + 1) * ch) << "\" width=\""
              << num(cw + 0.3) << "\" height=\"" << num(ch + 0.3) << "\" fill=\"" << col << "\"/>\n";
        }
    s << "<text x=\"" << W - MR << "\" y=\"" << MT - 6 << "\" text-anchor=\"end\">range " << num(vr.lo) << " .. "
      << num(vr.hi) << "</text>\n";
    s << "</svg>\n";
    return s.str();
}

RunRecorder::RunRecorder(fs::path out_dir, nlohmann::json inputs) : dir_(std::move(out_dir)) {
    fs::create_directories(dir_);
    manifest_["inputs"] = std::move(inputs);
    manifest_["outputs"] = nlohmann::json::array();
    manifest_["notes"] = nlohmann::json::object();
}

void RunRecorder::write(const std::string& name, const std::string& content) {
    const fs::path p = dir_ / name;
    {
        std::ofstream out(p, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + p.string());
        out << content;
    }
    files_.push_back(name);
    manifest_["outputs"].push_back({{"file", name}, {"bytes", content.size()}, {"sha256", sha256_hex(content)}});
}

void RunRecorder::note(const std::string& key, nlohmann::json value) { manifest_["notes"][key] = std::move(value); }

void RunRecorder::set_cache(const std::string& key, bool hit) { manifest_["cache"] = {{"key", key}, {"hit", hit}}; }

void RunRecorder::finish(double seconds) {
    manifest_["timing_seconds"] = seconds;
    std::ofstream out(dir_ / "manifest.json");
    out << manifest_.dump(2) << "\n";
}

}  // namespace ndwp::cli
