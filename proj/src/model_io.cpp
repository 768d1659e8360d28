#include "rbrl/model_io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "rbrl/solver.hpp"

namespace rbrl {

namespace {

constexpr char kMagic[8] = {'R', 'B', 'R', 'L', '0', '0', '0', '1'};
constexpr const char* kTextMagic = "#rbrl-model v1";

// The binary layout is little-endian; this writer/reader targets
// little-endian hosts and round-trips doubles bit-exactly.

void put_u64(std::ostream& out, std::uint64_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& out, double v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint64_t get_u64(std::istream& in) {
  std::uint64_t v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw VersionMismatch("model file truncated");
  return v;
}

double get_f64(std::istream& in) {
  double v = 0;
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw VersionMismatch("model file truncated");
  return v;
}

void put_matrix(std::ostream& out, const Matrix& m) {
  put_u64(out, static_cast<std::uint64_t>(m.rows()));
  put_u64(out, static_cast<std::uint64_t>(m.cols()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) put_f64(out, m(i, j));
  }
}

Matrix get_matrix(std::istream& in) {
  const auto rows = static_cast<Index>(get_u64(in));
  const auto cols = static_cast<Index>(get_u64(in));
  if (rows < 0 || cols < 0 || rows > (1 << 28) || cols > (1 << 28)) {
    throw VersionMismatch("model file carries implausible matrix dimensions");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = get_f64(in);
  }
  return m;
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("0");
}

void put_matrix_text(std::ostream& out, const char* name, const Matrix& m) {
  out << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << "\n";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << fmt(m(i, j));
    }
    out << "\n";
  }
}

Matrix get_matrix_text(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw VersionMismatch("text model truncated before matrix " + name);
  }
  std::istringstream hs(line);
  std::string kw, got;
  Index rows = 0, cols = 0;
  if (!(hs >> kw >> got >> rows >> cols) || kw != "matrix" || got != name) {
    throw VersionMismatch("expected 'matrix " + name + " <rows> <cols>', got '" +
                          line + "'");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw VersionMismatch("text model truncated inside matrix " + name);
    }
    std::istringstream rs(line);
    for (Index j = 0; j < cols; ++j) {
      if (!(rs >> m(i, j))) {
        throw VersionMismatch("bad value in matrix " + name + " row " +
                              std::to_string(i));
      }
    }
  }
  return m;
}

void save_binary(const AnyModel& model, std::ostream& out) {
  out.write(kMagic, sizeof kMagic);
  if (const auto* lin = std::get_if<LinearModel>(&model)) {
    out.put(0);
    out.put(lin->bias_added ? 1 : 0);
    put_u64(out, static_cast<std::uint64_t>(lin->raw_features));
    put_matrix(out, lin->weights);
  } else {
    const auto& ker = std::get<KernelModel>(model);
    out.put(1);
    out.put(ker.kernel.kind == KernelKind::Rbf ? 1 : 0);
    put_f64(out, ker.kernel.gamma);
    put_matrix(out, ker.coefficients);
    put_matrix(out, ker.train_features);
  }
}

void save_text(const AnyModel& model, std::ostream& out) {
  out << kTextMagic << "\n";
  if (const auto* lin = std::get_if<LinearModel>(&model)) {
    out << "kind linear\n";
    out << "bias " << (lin->bias_added ? 1 : 0) << "\n";
    out << "raw_features " << lin->raw_features << "\n";
    put_matrix_text(out, "weights", lin->weights);
  } else {
    const auto& ker = std::get<KernelModel>(model);
    out << "kind kernel\n";
    out << "kernel "
        << (ker.kernel.kind == KernelKind::Rbf ? "rbf" : "linear") << "\n";
    out << "gamma " << fmt(ker.kernel.gamma) << "\n";
    put_matrix_text(out, "coefficients", ker.coefficients);
    put_matrix_text(out, "train_features", ker.train_features);
  }
}

AnyModel load_binary(std::istream& in) {
  const int kind = in.get();
  if (kind == 0) {
    LinearModel lin;
    lin.bias_added = in.get() != 0;
    lin.raw_features = static_cast<Index>(get_u64(in));
    lin.weights = get_matrix(in);
    const Index expected = lin.raw_features + (lin.bias_added ? 1 : 0);
    if (lin.weights.rows() != expected) {
      throw VersionMismatch("linear model weight rows inconsistent with "
                            "recorded feature width");
    }
    return lin;
  }
  if (kind == 1) {
    KernelModel ker;
    const int kk = in.get();
    ker.kernel.kind = kk == 1 ? KernelKind::Rbf : KernelKind::Linear;
    ker.kernel.gamma = get_f64(in);
    ker.coefficients = get_matrix(in);
    ker.train_features = get_matrix(in);
    if (ker.train_features.rows() != ker.coefficients.rows()) {
      throw VersionMismatch("kernel model training rows inconsistent with "
                            "coefficient rows");
    }
    return ker;
  }
  throw VersionMismatch("unknown model kind byte " + std::to_string(kind));
}

std::string read_kv(std::istream& in, const std::string& key) {
  std::string line;
  if (!std::getline(in, line)) {
    throw VersionMismatch("text model truncated before '" + key + "'");
  }
  std::istringstream ls(line);
  std::string k, v;
  if (!(ls >> k >> v) || k != key) {
    throw VersionMismatch("expected '" + key + " <value>', got '" + line +
                          "'");
  }
  return v;
}

AnyModel load_text(std::istream& in) {
  const std::string kind = read_kv(in, "kind");
  if (kind == "linear") {
    LinearModel lin;
    lin.bias_added = read_kv(in, "bias") == "1";
    lin.raw_features = std::stol(read_kv(in, "raw_features"));
    lin.weights = get_matrix_text(in, "weights");
    return lin;
  }
  if (kind == "kernel") {
    KernelModel ker;
    const std::string kk = read_kv(in, "kernel");
    ker.kernel.kind = kk == "rbf" ? KernelKind::Rbf : KernelKind::Linear;
    ker.kernel.gamma = std::stod(read_kv(in, "gamma"));
    ker.coefficients = get_matrix_text(in, "coefficients");
    ker.train_features = get_matrix_text(in, "train_features");
    return ker;
  }
  throw VersionMismatch("unknown model kind '" + kind + "'");
}

} // namespace

void save_model(const AnyModel& model, const std::string& path, bool text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  if (text) {
    save_text(model, out);
  } else {
    save_binary(model, out);
  }
  if (!out) throw ParseError("failed writing model to '" + path + "'");
}

AnyModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open model file '" + path + "'");
  char head[8] = {};
  in.read(head, sizeof head);
  if (in.gcount() == 8 && std::memcmp(head, kMagic, 8) == 0) {
    return load_binary(in);
  }
  // Try the textual form.
  in.clear();
  in.seekg(0);
  std::string first;
  if (std::getline(in, first) && first == kTextMagic) {
    return load_text(in);
  }
  if (std::string(head, 4) == "RBRL" || first.starts_with("#rbrl-model")) {
    throw VersionMismatch("'" + path +
                          "' uses an unsupported model format version");
  }
  throw VersionMismatch("'" + path + "' is not an rbrl model file");
}

Index model_label_count(const AnyModel& model) {
  return std::visit([](const auto& m) { return m.label_count(); }, model);
}

Index model_input_width(const AnyModel& model) {
  if (const auto* lin = std::get_if<LinearModel>(&model)) {
    return lin->raw_features;
  }
  return std::get<KernelModel>(model).train_features.cols();
}

std::pair<PredictionScores, LabelPredictions> predict_any(
    const AnyModel& model, const Matrix& x_test) {
  return std::visit(
      [&](const auto& m) { return predict(m, x_test); }, model);
}

} // namespace rbrl
