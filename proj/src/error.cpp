#include "loopym/error.hpp"

namespace loopym {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::TorusTooSmall: return "TorusTooSmall";
    case Errc::DisconnectedGraph: return "DisconnectedGraph";
    case Errc::SelfLoopOrMultiEdge: return "SelfLoopOrMultiEdge";
    case Errc::UnknownVertex: return "UnknownVertex";
    case Errc::NotATorus: return "NotATorus";
    case Errc::NotAnEdge: return "NotAnEdge";
    case Errc::InvalidPath: return "InvalidPath";
    case Errc::NotEulerian: return "NotEulerian";
    case Errc::NotAFlow: return "NotAFlow";
    case Errc::NotGeodesic: return "NotGeodesic";
    case Errc::ZeroRateChannel: return "ZeroRateChannel";
    case Errc::GraphMismatch: return "GraphMismatch";
    case Errc::TreeMismatch: return "TreeMismatch";
    case Errc::NotAntihermitian: return "NotAntihermitian";
    case Errc::ImaginaryResidue: return "ImaginaryResidue";
    case Errc::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

void raise(Errc code, const std::string& detail) {
  std::string msg = errc_name(code);
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  throw Error(code, msg);
}

}  // namespace loopym
