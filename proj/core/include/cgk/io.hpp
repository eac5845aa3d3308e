#pragma once

#include <string>

#include "cgk/diagram.hpp"
#include "cgk/embedding.hpp"
#include "cgk/groupoid.hpp"
#include "cgk/measure.hpp"

namespace cgk::io {

/// File schema: {"levels":[{"vertices":[...]},...], "edges":[[{"label","from","to"},...],...]}
/// with the implicit root "v0" at level 0; "levels" starts at level 1.
std::string diagram_to_json(const BratteliDiagram& d);
ValidationResult diagram_from_json(const std::string& text);
BratteliDiagram load_diagram(const std::string& path);
void save_diagram(const BratteliDiagram& d, const std::string& path);

/// Embedding schema: {"levels":[{"level":k,"xi":{w:v},"xi0":{f:e},"xi1":{f:e}},...]}.
std::string embedding_to_json(const BratteliDiagram& host, const BratteliDiagram& guest,
                              const DiagramEmbedding& emb);
DiagramEmbedding embedding_from_json(const BratteliDiagram& host, const BratteliDiagram& guest,
                                     const std::string& text);
DiagramEmbedding load_embedding(const BratteliDiagram& host, const BratteliDiagram& guest,
                                const std::string& path);
void save_embedding(const BratteliDiagram& host, const BratteliDiagram& guest,
                    const DiagramEmbedding& emb, const std::string& path);

/// Weights schema: map level -> vertex -> decimal string.
std::string weights_to_json(const BratteliDiagram& d, const LevelWeights& w);

/// Basis element schema: {"kind":"beta"|"delta","i":0|1,"p":[labels],"q":[labels]}.
std::string basis_element_to_json(const EmbeddedSystem& sys, const BasisElement& g);
BasisElement basis_element_from_json(const EmbeddedSystem& sys, const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace cgk::io
