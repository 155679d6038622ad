#include "advk/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace advk {

namespace {

std::size_t idx(int row, int col, int cols) {
  return static_cast<std::size_t>(row) * static_cast<std::size_t>(cols) +
         static_cast<std::size_t>(col);
}

void check_input(const TinyClassifier& m, const Vec& x) {
  if (static_cast<int>(x.size()) != m.dim)
    throw std::invalid_argument("input dimension mismatch");
}

void check_label(const TinyClassifier& m, int y) {
  if (y < 0 || y >= m.classes) throw std::invalid_argument("label out of range");
}

}  // namespace

Vec softmax(const Vec& z) {
  if (z.empty()) throw std::invalid_argument("softmax on empty vector");
  const double zmax = *std::max_element(z.begin(), z.end());
  Vec p(z.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    p[i] = std::exp(z[i] - zmax);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

Vec TinyClassifier::scores(const Vec& x) const {
  check_input(*this, x);
  if (arch == Arch::Linear) {
    Vec z(static_cast<std::size_t>(classes));
    for (int c = 0; c < classes; ++c) {
      double v = b1[static_cast<std::size_t>(c)];
      for (int d = 0; d < dim; ++d)
        v += w1[idx(c, d, dim)] * x[static_cast<std::size_t>(d)];
      z[static_cast<std::size_t>(c)] = v;
    }
    return z;
  }
  Vec h(static_cast<std::size_t>(hidden));
  for (int j = 0; j < hidden; ++j) {
    double v = b1[static_cast<std::size_t>(j)];
    for (int d = 0; d < dim; ++d)
      v += w1[idx(j, d, dim)] * x[static_cast<std::size_t>(d)];
    h[static_cast<std::size_t>(j)] = std::tanh(v);
  }
  Vec z(static_cast<std::size_t>(classes));
  for (int c = 0; c < classes; ++c) {
    double v = b2[static_cast<std::size_t>(c)];
    for (int j = 0; j < hidden; ++j)
      v += w2[idx(c, j, hidden)] * h[static_cast<std::size_t>(j)];
    z[static_cast<std::size_t>(c)] = v;
  }
  return z;
}

Vec TinyClassifier::probs(const Vec& x) const { return softmax(scores(x)); }

int TinyClassifier::classify(const Vec& x) const {
  const Vec z = scores(x);
  int best = 0;
  for (int c = 1; c < classes; ++c)
    if (z[static_cast<std::size_t>(c)] > z[static_cast<std::size_t>(best)])
      best = c;
  return best;
}

double TinyClassifier::loss(const Vec& x, int y) const {
  check_label(*this, y);
  const Vec p = probs(x);
  return -std::log(std::max(p[static_cast<std::size_t>(y)], 1e-300));
}

Vec TinyClassifier::loss_gradient(const Vec& x, int y) const {
  check_label(*this, y);
  if (arch == Arch::Linear) {
    Vec dz = probs(x);
    dz[static_cast<std::size_t>(y)] -= 1.0;
    Vec g(static_cast<std::size_t>(dim), 0.0);
    for (int c = 0; c < classes; ++c)
      for (int d = 0; d < dim; ++d)
        g[static_cast<std::size_t>(d)] +=
            dz[static_cast<std::size_t>(c)] * w1[idx(c, d, dim)];
    return g;
  }
  Vec h(static_cast<std::size_t>(hidden));
  for (int j = 0; j < hidden; ++j) {
    double v = b1[static_cast<std::size_t>(j)];
    for (int d = 0; d < dim; ++d)
      v += w1[idx(j, d, dim)] * x[static_cast<std::size_t>(d)];
    h[static_cast<std::size_t>(j)] = std::tanh(v);
  }
  Vec z(static_cast<std::size_t>(classes));
  for (int c = 0; c < classes; ++c) {
    double v = b2[static_cast<std::size_t>(c)];
    for (int j = 0; j < hidden; ++j)
      v += w2[idx(c, j, hidden)] * h[static_cast<std::size_t>(j)];
    z[static_cast<std::size_t>(c)] = v;
  }
  Vec dz = softmax(z);
  dz[static_cast<std::size_t>(y)] -= 1.0;
  Vec dh(static_cast<std::size_t>(hidden), 0.0);
  for (int c = 0; c < classes; ++c)
    for (int j = 0; j < hidden; ++j)
      dh[static_cast<std::size_t>(j)] +=
          dz[static_cast<std::size_t>(c)] * w2[idx(c, j, hidden)];
  Vec g(static_cast<std::size_t>(dim), 0.0);
  for (int j = 0; j < hidden; ++j) {
    const double dz1 =
        dh[static_cast<std::size_t>(j)] *
        (1.0 - h[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(j)]);
    for (int d = 0; d < dim; ++d)
      g[static_cast<std::size_t>(d)] += dz1 * w1[idx(j, d, dim)];
  }
  return g;
}

std::string TinyClassifier::serialize() const {
  std::ostringstream out;
  out << (arch == Arch::Linear ? "linear" : "mlp1") << " " << dim << " "
      << classes << " " << hidden << "\n";
  char buf[64];
  auto dump = [&out, &buf](const Vec& v) {
    for (double d : v) {
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out << buf << "\n";
    }
  };
  dump(w1);
  dump(b1);
  dump(w2);
  dump(b2);
  return out.str();
}

TinyClassifier TinyClassifier::deserialize(const std::string& text) {
  std::istringstream in(text);
  std::string kind;
  TinyClassifier m;
  if (!(in >> kind >> m.dim >> m.classes >> m.hidden))
    throw std::invalid_argument("bad classifier header");
  if (kind == "linear")
    m.arch = Arch::Linear;
  else if (kind == "mlp1")
    m.arch = Arch::Mlp1;
  else
    throw std::invalid_argument("unknown architecture: " + kind);
  if (m.dim <= 0 || m.classes <= 1 || m.hidden < 0 ||
      (m.arch == Arch::Mlp1 && m.hidden == 0))
    throw std::invalid_argument("bad classifier dimensions");

  const std::size_t n1 = m.arch == Arch::Linear
                             ? static_cast<std::size_t>(m.classes * m.dim)
                             : static_cast<std::size_t>(m.hidden * m.dim);
  const std::size_t nb1 = m.arch == Arch::Linear
                              ? static_cast<std::size_t>(m.classes)
                              : static_cast<std::size_t>(m.hidden);
  const std::size_t n2 =
      m.arch == Arch::Linear ? 0 : static_cast<std::size_t>(m.classes * m.hidden);
  const std::size_t nb2 =
      m.arch == Arch::Linear ? 0 : static_cast<std::size_t>(m.classes);

  auto read_vec = [&in](std::size_t n) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i)
      if (!(in >> v[i])) throw std::invalid_argument("truncated classifier data");
    return v;
  };
  m.w1 = read_vec(n1);
  m.b1 = read_vec(nb1);
  m.w2 = read_vec(n2);
  m.b2 = read_vec(nb2);
  double extra;
  if (in >> extra) throw std::invalid_argument("trailing classifier data");
  return m;
}

namespace {

struct Grads {
  Vec w1, b1, w2, b2;
};

void accumulate(const TinyClassifier& m, const Vec& x, int y, Grads& g) {
  if (m.arch == Arch::Linear) {
    Vec dz = m.probs(x);
    dz[static_cast<std::size_t>(y)] -= 1.0;
    for (int c = 0; c < m.classes; ++c) {
      for (int d = 0; d < m.dim; ++d)
        g.w1[idx(c, d, m.dim)] +=
            dz[static_cast<std::size_t>(c)] * x[static_cast<std::size_t>(d)];
      g.b1[static_cast<std::size_t>(c)] += dz[static_cast<std::size_t>(c)];
    }
    return;
  }
  Vec h(static_cast<std::size_t>(m.hidden));
  for (int j = 0; j < m.hidden; ++j) {
    double v = m.b1[static_cast<std::size_t>(j)];
    for (int d = 0; d < m.dim; ++d)
      v += m.w1[idx(j, d, m.dim)] * x[static_cast<std::size_t>(d)];
    h[static_cast<std::size_t>(j)] = std::tanh(v);
  }
  Vec z(static_cast<std::size_t>(m.classes));
  for (int c = 0; c < m.classes; ++c) {
    double v = m.b2[static_cast<std::size_t>(c)];
    for (int j = 0; j < m.hidden; ++j)
      v += m.w2[idx(c, j, m.hidden)] * h[static_cast<std::size_t>(j)];
    z[static_cast<std::size_t>(c)] = v;
  }
  Vec dz = softmax(z);
  dz[static_cast<std::size_t>(y)] -= 1.0;
  Vec dh(static_cast<std::size_t>(m.hidden), 0.0);
  for (int c = 0; c < m.classes; ++c) {
    for (int j = 0; j < m.hidden; ++j) {
      g.w2[idx(c, j, m.hidden)] +=
          dz[static_cast<std::size_t>(c)] * h[static_cast<std::size_t>(j)];
      dh[static_cast<std::size_t>(j)] +=
          dz[static_cast<std::size_t>(c)] * m.w2[idx(c, j, m.hidden)];
    }
    g.b2[static_cast<std::size_t>(c)] += dz[static_cast<std::size_t>(c)];
  }
  for (int j = 0; j < m.hidden; ++j) {
    const double dz1 =
        dh[static_cast<std::size_t>(j)] *
        (1.0 - h[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(j)]);
    for (int d = 0; d < m.dim; ++d)
      g.w1[idx(j, d, m.dim)] += dz1 * x[static_cast<std::size_t>(d)];
    g.b1[static_cast<std::size_t>(j)] += dz1;
  }
}

}  // namespace

TrainResult train_sgd(const SyntheticDataset& data, Arch arch, int hidden,
                      const TrainParams& p) {
  if (data.samples.empty()) throw std::invalid_argument("empty training set");
  if (p.batch <= 0) throw std::invalid_argument("batch size must be positive");
  if (p.epochs < 0) throw std::invalid_argument("epochs must be non-negative");
  if (arch == Arch::Mlp1 && hidden <= 0)
    throw std::invalid_argument("mlp1 needs a positive hidden width");

  TinyClassifier m;
  m.arch = arch;
  m.dim = data.dim;
  m.classes = data.classes;
  m.hidden = arch == Arch::Mlp1 ? hidden : 0;

  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> init(-0.5, 0.5);
  auto fill = [&rng, &init](Vec& v, std::size_t n) {
    v.resize(n);
    for (double& d : v) d = init(rng);
  };
  if (arch == Arch::Linear) {
    fill(m.w1, static_cast<std::size_t>(m.classes * m.dim));
    fill(m.b1, static_cast<std::size_t>(m.classes));
  } else {
    fill(m.w1, static_cast<std::size_t>(m.hidden * m.dim));
    fill(m.b1, static_cast<std::size_t>(m.hidden));
    fill(m.w2, static_cast<std::size_t>(m.classes * m.hidden));
    fill(m.b2, static_cast<std::size_t>(m.classes));
  }

  std::vector<std::size_t> order(data.samples.size());
  std::iota(order.begin(), order.end(), 0);

  for (int epoch = 0; epoch < p.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(p.batch)) {
      const std::size_t end =
          std::min(order.size(), start + static_cast<std::size_t>(p.batch));
      Grads g{Vec(m.w1.size(), 0.0), Vec(m.b1.size(), 0.0),
              Vec(m.w2.size(), 0.0), Vec(m.b2.size(), 0.0)};
      double batch_loss = 0.0;
      for (std::size_t k = start; k < end; ++k) {
        const Sample& s = data.samples[order[k]];
        batch_loss += m.loss(s.x, s.y);
        accumulate(m, s.x, s.y, g);
      }
      if (!std::isfinite(batch_loss))
        throw std::runtime_error("training diverged at epoch " +
                                 std::to_string(epoch) + ": loss is not finite");
      const double scale = p.lr / static_cast<double>(end - start);
      for (std::size_t i = 0; i < m.w1.size(); ++i) m.w1[i] -= scale * g.w1[i];
      for (std::size_t i = 0; i < m.b1.size(); ++i) m.b1[i] -= scale * g.b1[i];
      for (std::size_t i = 0; i < m.w2.size(); ++i) m.w2[i] -= scale * g.w2[i];
      for (std::size_t i = 0; i < m.b2.size(); ++i) m.b2[i] -= scale * g.b2[i];
    }
  }

  int correct = 0;
  for (const Sample& s : data.samples)
    if (m.classify(s.x) == s.y) ++correct;
  return {std::move(m),
          static_cast<double>(correct) / static_cast<double>(data.samples.size())};
}

}  // namespace advk
