// Copyright 2026 The audiozoom authors
// Little-endian binary stream helpers and atomic file writes.
//
// Licensed under the Apache License, Version 2.0

#pragma once

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace azoom::detail {

// This code assumes a little-endian host, which covers every platform the
// project is built on; a static check keeps the assumption honest.
inline void check_little_endian() {
  const uint32_t probe = 1;
  unsigned char byte0;
  std::memcpy(&byte0, &probe, 1);
  if (byte0 != 1) throw std::runtime_error("big-endian hosts are not supported");
}

template <typename T>
void write_le(std::ostream& os, T value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_le(std::istream& is) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!is) throw std::runtime_error("unexpected end of file");
  return value;
}

inline void write_bytes(std::ostream& os, const void* data, size_t n) {
  os.write(reinterpret_cast<const char*>(data), std::streamsize(n));
}

inline void read_bytes(std::istream& is, void* data, size_t n) {
  is.read(reinterpret_cast<char*>(data), std::streamsize(n));
  if (!is) throw std::runtime_error("unexpected end of file");
}

/// Writes via a temp file in the same directory, then renames into place.
inline void atomic_write(const std::string& path,
                         const std::function<void(std::ostream&)>& fill) {
  check_little_endian();
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open for writing: " + tmp);
    fill(os);
    os.flush();
    if (!os) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename into place: " + path);
  }
}

}  // namespace azoom::detail
