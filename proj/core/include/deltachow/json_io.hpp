#pragma once

#include <nlohmann/json.hpp>

#include "deltachow/chain.hpp"
#include "deltachow/chow.hpp"
#include "deltachow/quasivar.hpp"
#include "deltachow/verify.hpp"

namespace deltachow {

using Json = nlohmann::ordered_json;

Json poly_json(const DiffPoly& p);
Json chain_json(const DiffChain& chain);
Json chow_json(const ChowForm& C);
Json report_json(const VerificationReport& rep);
Json quasivariety_json(const QuasiVarietyPresentation& Q);
Json matrix_json(const MatrixCertificate& cert);

RingPtr ring_from_json(const Json& j);
DiffPoly poly_from_json(const Json& j);
DiffChain chain_from_json(const Json& j);
ChowForm chow_from_json(const Json& j);

}  // namespace deltachow
