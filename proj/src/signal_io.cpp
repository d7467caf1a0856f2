#include "tvar/signal_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <numbers>
#include <vector>

#include "tvar/errors.hpp"

namespace tvar {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

std::uint32_t get_u32(const std::string& s, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i)
    v = (v << 8) | static_cast<unsigned char>(s[at + i]);
  return v;
}

std::uint16_t get_u16(const std::string& s, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(s[at]) |
                                    (static_cast<unsigned char>(s[at + 1])
                                     << 8));
}

std::string slurp_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good())
    throw IoError("cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return data;
}

}  // namespace

SignalFile read_csv_signal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in.good()) throw IoError("cannot open " + path.string());
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    while (end && *end == ' ') ++end;
    if (end == line.c_str() || (end && *end != '\0'))
      throw IoError("not a number in " + path.string() + ": " + line);
    values.push_back(v);
  }
  SignalFile file;
  file.samples = Eigen::Map<Eigen::VectorXd>(values.data(),
                                             static_cast<int>(values.size()));
  return file;
}

void write_csv_signal(const std::filesystem::path& path,
                      const Eigen::VectorXd& samples,
                      const std::string& comment) {
  std::ofstream out(path);
  if (!out.good()) throw IoError("cannot write " + path.string());
  if (!comment.empty()) out << "# " << comment << "\n";
  char buf[40];
  for (int i = 0; i < samples.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g\n", samples(i));
    out << buf;
  }
  if (!out.good()) throw IoError("failed writing " + path.string());
}

SignalFile read_wav(const std::filesystem::path& path) {
  const std::string data = slurp_binary(path);
  if (data.size() < 44 || data.compare(0, 4, "RIFF") != 0 ||
      data.compare(8, 4, "WAVE") != 0)
    throw IoError("not a RIFF/WAVE file: " + path.string());

  bool have_fmt = false;
  std::size_t data_at = 0, data_size = 0;
  SignalFile file;
  std::size_t at = 12;
  while (at + 8 <= data.size()) {
    const std::string id = data.substr(at, 4);
    const std::uint32_t size = get_u32(data, at + 4);
    const std::size_t body = at + 8;
    if (body + size > data.size())
      throw IoError("truncated chunk in " + path.string());
    if (id == "fmt ") {
      if (size < 16) throw IoError("malformed fmt chunk: " + path.string());
      if (get_u16(data, body) != 1 || get_u16(data, body + 2) != 1 ||
          get_u16(data, body + 14) != 16)
        throw IoError("only 16-bit PCM mono is supported: " + path.string());
      file.sample_rate = get_u32(data, body + 4);
      have_fmt = true;
    } else if (id == "data") {
      data_at = body;
      data_size = size;
    }
    at = body + size + (size % 2);  // chunks are word aligned
  }
  if (!have_fmt || data_at == 0)
    throw IoError("missing fmt/data chunk: " + path.string());

  const std::size_t n = data_size / 2;
  file.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::int16_t v = static_cast<std::int16_t>(
        get_u16(data, data_at + 2 * i));
    file.samples(i) = v / 32768.0;
  }
  return file;
}

void write_wav(const std::filesystem::path& path,
               const Eigen::VectorXd& samples, double sample_rate) {
  if (!(sample_rate > 0.0))
    throw InvalidArgumentError("wav: sample rate must be positive");
  const std::uint32_t rate = static_cast<std::uint32_t>(std::lround(sample_rate));
  const std::uint32_t n = static_cast<std::uint32_t>(samples.size());

  std::string out;
  out.reserve(44 + 2 * n);
  out += "RIFF";
  put_u32(out, 36 + 2 * n);
  out += "WAVE";
  out += "fmt ";
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, rate);
  put_u32(out, rate * 2);  // byte rate
  put_u16(out, 2);         // block align
  put_u16(out, 16);        // bits per sample
  out += "data";
  put_u32(out, 2 * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    long v = std::lround(samples(i) * 32768.0);
    v = std::max(-32768L, std::min(32767L, v));
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }

  std::ofstream f(path, std::ios::binary);
  if (!f.good()) throw IoError("cannot write " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f.good()) throw IoError("failed writing " + path.string());
}

SignalFile read_signal(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".wav") return read_wav(path);
  if (ext == ".csv") return read_csv_signal(path);
  throw IoError("unsupported signal format: " + path.string());
}

Eigen::VectorXd decimate(const Eigen::VectorXd& x, int factor) {
  if (factor < 1)
    throw InvalidArgumentError("decimate: factor must be >= 1");
  if (factor == 1) return x;

  // Linear-phase low-pass: 63-tap Hamming-windowed sinc with cutoff at
  // 0.45 of the post-decimation Nyquist, unity DC gain.
  constexpr int taps = 63;
  constexpr int center = taps / 2;
  const double fc = 0.45 * 0.5 / factor;  // cycles per input sample
  Eigen::VectorXd h(taps);
  for (int k = 0; k < taps; ++k) {
    const double t = k - center;
    const double sinc =
        t == 0.0 ? 2.0 * fc
                 : std::sin(2.0 * std::numbers::pi * fc * t) /
                       (std::numbers::pi * t);
    const double window =
        0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * k / (taps - 1));
    h(k) = sinc * window;
  }
  h /= h.sum();

  const int n = static_cast<int>(x.size());
  const int out_n = (n + factor - 1) / factor;
  Eigen::VectorXd out(out_n);
  for (int i = 0; i < out_n; ++i) {
    const int t = i * factor;
    double acc = 0.0;
    for (int k = 0; k < taps; ++k) {
      const int src = t + center - k;
      if (src >= 0 && src < n) acc += h(k) * x(src);
    }
    out(i) = acc;
  }
  return out;
}

}  // namespace tvar
