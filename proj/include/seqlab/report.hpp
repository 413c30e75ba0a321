#pragma once

#include <json.hpp>

#include "seqlab/algebra.hpp"
#include "seqlab/classify.hpp"
#include "seqlab/explike.hpp"
#include "seqlab/montecarlo.hpp"
#include "seqlab/porosity.hpp"
#include "seqlab/window_stats.hpp"

namespace seqlab {

// Stable JSON field names. Non-finite reals are emitted as null.
nlohmann::ordered_json to_json(const SequenceSpec& spec);
nlohmann::ordered_json to_json(const WindowProfile& profile);
nlohmann::ordered_json to_json(const ClassificationReport& report);
nlohmann::ordered_json to_json(const PreimageResult& result);
nlohmann::ordered_json to_json(const WitnessReport& report);
nlohmann::ordered_json to_json(const PorosityCertificate& cert);
nlohmann::ordered_json to_json(const CertificateVerdict& verdict);
nlohmann::ordered_json to_json(const LlnReport& report);
nlohmann::ordered_json to_json(const BlockDecayReport& report);

// Inverse of to_json(PorosityCertificate); the base classify evidence is kept as recorded.
PorosityCertificate certificate_from_json(const nlohmann::ordered_json& j);

}  // namespace seqlab
