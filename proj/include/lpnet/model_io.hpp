#ifndef LPNET_MODEL_IO_HPP
#define LPNET_MODEL_IO_HPP

///
/// \file model_io.hpp
///
/// JSON encodings of models, sample sets and coefficient windows. Complex
/// numbers are [re, im] pairs; doubles are written with round-trip precision.
///

#include <string>

#include <json.hpp>

#include "lpnet/laurent.hpp"
#include "lpnet/pipeline.hpp"

namespace lpnet
{

nlohmann::json to_json(const NetworkComponent& comp);
NetworkComponent component_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json to_json(const Model& m);
/// Revalidates every component; errors name the offending field path.
Model model_from_json(const nlohmann::json& j);

void save_model(const Model& m, const std::string& path);
Model load_model(const std::string& path);

nlohmann::json to_json(const ContourSamples& s);
ContourSamples samples_from_json(const nlohmann::json& j);
ContourSamples load_samples(const std::string& path);
void save_samples(const ContourSamples& s, const std::string& path);

nlohmann::json to_json(const LaurentWindow& w);

nlohmann::json complex_to_json(cplx z);
nlohmann::json vector_to_json(const CVector& v);

/// Write j to path (pretty printed); throws ValidationError if unwritable.
void write_json(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json(const std::string& path);

} // namespace lpnet

#endif // LPNET_MODEL_IO_HPP
