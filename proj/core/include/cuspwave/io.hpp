#pragma once

#include <string>
#include <vector>

#include "cuspwave/wave.hpp"

namespace cuspwave {

// 17-significant-digit floating-point formatting; infinities render as
// "inf" / "-inf".
std::string fmt17(double x);

// Write content to path via a temporary file in the same directory plus
// rename, so readers never observe partial files.
void atomic_write(const std::string& path, const std::string& content);

// Minimal ordered JSON document builder. Key order is insertion order and
// numbers go through fmt17, which keeps byte-identical reruns.
class JsonDoc {
 public:
  JsonDoc& number(const std::string& key, double value);
  JsonDoc& integer(const std::string& key, long long value);
  JsonDoc& boolean(const std::string& key, bool value);
  JsonDoc& text(const std::string& key, const std::string& value);
  JsonDoc& raw(const std::string& key, const std::string& json);
  JsonDoc& numberArray(const std::string& key, const std::vector<double>& xs);
  JsonDoc& textArray(const std::string& key,
                     const std::vector<std::string>& xs);
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string json_quote(const std::string& s);

// Long-format wave CSV (q,p,h) with metadata comment lines so the file can
// be reloaded as a restart state.
std::string wave_to_csv(const WaveGrid& g);
WaveGrid wave_from_csv(const std::string& content);
WaveGrid load_wave_csv(const std::string& path);

}  // namespace cuspwave
