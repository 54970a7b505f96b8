#pragma once

#include <stdexcept>
#include <string>

namespace loopym {

enum class Errc {
  TorusTooSmall,
  DisconnectedGraph,
  SelfLoopOrMultiEdge,
  UnknownVertex,
  NotATorus,
  NotAnEdge,
  InvalidPath,
  NotEulerian,
  NotAFlow,
  NotGeodesic,
  ZeroRateChannel,
  GraphMismatch,
  TreeMismatch,
  NotAntihermitian,
  ImaginaryResidue,
  ConfigError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& detail = "");

}  // namespace loopym
