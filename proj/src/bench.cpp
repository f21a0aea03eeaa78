#include "csdfd/bench.hpp"

#include "csdfd/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace csdfd {

namespace {

void fill_noise(Matrix& m, double sigma, Rng& rng) {
    for (double& v : m.data) v = sigma * rng.normal();
}

void add_offset(Matrix& m, std::size_t first, std::size_t last, double value) {
    const std::size_t hi = std::min(last, m.cols - 1);
    for (std::size_t r = 0; r < m.rows; ++r) {
        for (std::size_t c = first; c <= hi; ++c) m.at(r, c) += value;
    }
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows + b.rows, a.cols);
    std::copy(a.data.begin(), a.data.end(), out.data.begin());
    std::copy(b.data.begin(), b.data.end(), out.data.begin() + static_cast<std::ptrdiff_t>(a.data.size()));
    return out;
}

Batch make_pool(const Matrix& reals, const Matrix& fakes, SubsetTag tag) {
    Batch b;
    b.inputs = vstack(reals, fakes);
    b.labels.assign(reals.rows, 0.0);
    b.labels.insert(b.labels.end(), fakes.rows, 1.0);
    b.tag = tag;
    return b;
}

}  // namespace

void SynthBenchConfig::validate() const {
    if (dim < 4) throw std::invalid_argument("SynthBenchConfig: dim must be >= 4");
    if (n_per_class < 1) throw std::invalid_argument("SynthBenchConfig: n_per_class must be >= 1");
    if (conflict_strength < 0.0 || conflict_strength > 1.0) {
        throw std::invalid_argument("SynthBenchConfig: conflict_strength must be in [0,1]");
    }
    if (noise_sigma < 0.0) throw std::invalid_argument("SynthBenchConfig: noise_sigma must be >= 0");
}

BenchDatasets gen_synth_bench(const SynthBenchConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    const std::size_t n = cfg.n_per_class;
    const std::size_t d = cfg.dim;
    const double kappa = cfg.conflict_strength;

    // Draw order is frozen; changing it changes every downstream artifact.
    Matrix train_real(n, d);
    fill_noise(train_real, cfg.noise_sigma, rng);

    Matrix train_fake_a(n, d);
    fill_noise(train_fake_a, cfg.noise_sigma, rng);
    add_offset(train_fake_a, 0, 0, kappa);
    add_offset(train_fake_a, 1, 4, kMethodOffset);

    Matrix train_fake_b(n, d);
    fill_noise(train_fake_b, cfg.noise_sigma, rng);
    add_offset(train_fake_b, 0, 0, -kappa);
    add_offset(train_fake_b, 5, 8, kBlendOffset);

    Matrix test_real(n, d);
    fill_noise(test_real, cfg.noise_sigma, rng);

    const std::size_t n_a = (n + 1) / 2;
    const std::size_t n_b = n / 2;
    Matrix test_fake_a(n_a, d);
    fill_noise(test_fake_a, cfg.noise_sigma, rng);
    add_offset(test_fake_a, 0, 0, kappa);
    add_offset(test_fake_a, 1, 4, kMethodOffset);

    Matrix test_fake_b(n_b, d);
    fill_noise(test_fake_b, cfg.noise_sigma, rng);
    add_offset(test_fake_b, 0, 0, -kappa);
    add_offset(test_fake_b, 5, 8, kBlendOffset);

    Matrix target_fake(n, d);
    fill_noise(target_fake, cfg.noise_sigma, rng);
    add_offset(target_fake, 5, 8, kBlendOffset * (1.0 - cfg.target_shift));
    add_offset(target_fake, 9, 12, kNovelOffset);

    BenchDatasets out;
    out.subset_x = make_pool(train_real, train_fake_a, SubsetTag::XOriginal);
    out.subset_xp = make_pool(train_real, train_fake_b, SubsetTag::XSynth);
    out.source_test = make_pool(test_real, vstack(test_fake_a, test_fake_b), SubsetTag::XOriginal);
    out.target_test = make_pool(test_real, target_fake, SubsetTag::XOriginal);
    return out;
}

double auc(const DenseVector& scores, const DenseVector& labels) {
    require_same_length(scores, labels, "auc");

    std::size_t n_pos = 0;
    for (double y : labels) {
        if (y != 0.0 && y != 1.0) throw std::invalid_argument("auc: label not in {0,1}");
        if (y == 1.0) ++n_pos;
    }
    const std::size_t n_neg = labels.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) throw std::invalid_argument("auc: needs both classes");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Rank sum of positives with average ranks across ties.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based
        for (std::size_t k = i; k <= j; ++k) {
            if (labels[order[k]] == 1.0) rank_sum_pos += avg_rank;
        }
        i = j + 1;
    }
    const double np = static_cast<double>(n_pos);
    const double nn = static_cast<double>(n_neg);
    return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
}

namespace {

struct NamedArray {
    const char* name;
    const Matrix* matrix;       // either matrix...
    const DenseVector* labels;  // ...or labels is set
};

void write_matrix_col_major(std::ofstream& f, const Matrix& m) {
    for (std::size_t c = 0; c < m.cols; ++c) {
        for (std::size_t r = 0; r < m.rows; ++r) {
            const double v = m.at(r, c);
            f.write(reinterpret_cast<const char*>(&v), sizeof(v));
        }
    }
}

Matrix read_matrix_col_major(std::ifstream& f, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) {
            double v;
            f.read(reinterpret_cast<char*>(&v), sizeof(v));
            m.at(r, c) = v;
        }
    }
    if (!f) throw std::runtime_error("load_datasets: truncated binary file");
    return m;
}

}  // namespace

void save_datasets(const BenchDatasets& data, const SynthBenchConfig& cfg,
                   const std::filesystem::path& stem) {
    const std::vector<std::pair<const char*, const Batch*>> batches = {
        {"subset_x", &data.subset_x},
        {"subset_xp", &data.subset_xp},
        {"source_test", &data.source_test},
        {"target_test", &data.target_test},
    };

    std::filesystem::path bin_path = stem;
    bin_path += ".bin";
    std::filesystem::path json_path = stem;
    json_path += ".json";

    std::ofstream bin(bin_path, std::ios::binary);
    if (!bin) throw std::runtime_error("save_datasets: cannot open " + bin_path.string());

    nlohmann::json arrays = nlohmann::json::array();
    std::size_t offset = 0;
    for (const auto& [name, batch] : batches) {
        arrays.push_back({{"name", std::string(name) + ".inputs"},
                          {"rows", batch->inputs.rows},
                          {"cols", batch->inputs.cols},
                          {"byte_offset", offset}});
        write_matrix_col_major(bin, batch->inputs);
        offset += batch->inputs.data.size() * sizeof(double);

        arrays.push_back({{"name", std::string(name) + ".labels"},
                          {"rows", batch->labels.size()},
                          {"cols", 1},
                          {"byte_offset", offset}});
        for (double v : batch->labels) bin.write(reinterpret_cast<const char*>(&v), sizeof(v));
        offset += batch->labels.size() * sizeof(double);
    }
    bin.close();
    if (!bin) throw std::runtime_error("save_datasets: write failed for " + bin_path.string());

    nlohmann::json sidecar = {
        {"format", "csdfd-bench-v1"},
        {"order", "column-major"},
        {"dtype", "float64-le"},
        {"algorithm_id", std::string(Rng::kAlgorithmId)},
        {"seed", cfg.seed},
        {"config",
         {{"dim", cfg.dim},
          {"n_per_class", cfg.n_per_class},
          {"conflict_strength", cfg.conflict_strength},
          {"noise_sigma", cfg.noise_sigma},
          {"target_shift", cfg.target_shift}}},
        {"offsets",
         {{"method", kMethodOffset}, {"blend", kBlendOffset}, {"novel", kNovelOffset}}},
        {"arrays", arrays},
    };
    std::ofstream js(json_path, std::ios::binary);
    js << sidecar.dump(2) << "\n";
    if (!js) throw std::runtime_error("save_datasets: write failed for " + json_path.string());
}

BenchDatasets load_datasets(const std::filesystem::path& stem) {
    std::filesystem::path bin_path = stem;
    bin_path += ".bin";
    std::filesystem::path json_path = stem;
    json_path += ".json";

    std::ifstream js(json_path);
    if (!js) throw std::runtime_error("load_datasets: cannot open " + json_path.string());
    nlohmann::json sidecar = nlohmann::json::parse(js);
    if (sidecar.at("format") != "csdfd-bench-v1") {
        throw std::runtime_error("load_datasets: unsupported format");
    }

    std::ifstream bin(bin_path, std::ios::binary);
    if (!bin) throw std::runtime_error("load_datasets: cannot open " + bin_path.string());

    BenchDatasets data;
    auto batch_of = [&](const std::string& name) -> Batch& {
        if (name == "subset_x") return data.subset_x;
        if (name == "subset_xp") return data.subset_xp;
        if (name == "source_test") return data.source_test;
        if (name == "target_test") return data.target_test;
        throw std::runtime_error("load_datasets: unknown array group " + name);
    };

    for (const auto& entry : sidecar.at("arrays")) {
        const std::string name = entry.at("name");
        const std::size_t rows = entry.at("rows");
        const std::size_t cols = entry.at("cols");
        bin.seekg(static_cast<std::streamoff>(entry.at("byte_offset").get<std::size_t>()));
        const auto dot_pos = name.find('.');
        Batch& b = batch_of(name.substr(0, dot_pos));
        if (name.substr(dot_pos + 1) == "inputs") {
            b.inputs = read_matrix_col_major(bin, rows, cols);
        } else {
            Matrix m = read_matrix_col_major(bin, rows, cols);
            b.labels = std::move(m.data);
        }
    }
    data.subset_x.tag = SubsetTag::XOriginal;
    data.subset_xp.tag = SubsetTag::XSynth;
    return data;
}

}  // namespace csdfd
