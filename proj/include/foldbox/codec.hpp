#pragma once

// Encoding and decoding between the in-memory structures and .fbx documents.
// Decoding performs shape checks only (arity, duplicate ids/keys, known
// sections); axiom checking is the validators' job.

#include "foldbox/document.hpp"
#include "foldbox/pseudo.hpp"

namespace foldbox {

// Throws ParseError on unknown sections or rows with the wrong arity.
void check_document_shape(const Document& doc);

Document encode_category(const FinCategory& c);
FinCategory decode_category(const Document& doc);

Document encode_groupoid(const FinGroupoid& g);
FinGroupoid decode_groupoid(const Document& doc);

Document encode_group(const FinGroup& g);
FinGroup decode_group(const Document& doc);

Document encode_functor(const FunctorData& f);
FunctorData decode_functor(const Document& doc);

Document encode_nat_transform(const NatTransformData& n);
NatTransformData decode_nat_transform(const Document& doc);

Document encode_two_category(const TwoCategory& c);
TwoCategory decode_two_category(const Document& doc);

Document encode_double_category(const DoubleCategory& d);
DoubleCategory decode_double_category(const Document& doc);

Document encode_double_functor(const DoubleFunctorData& f);
DoubleFunctorData decode_double_functor(const Document& doc);

Document encode_vertical_transformation(const VerticalTransformationData& v);
VerticalTransformationData decode_vertical_transformation(const Document& doc);

Document encode_horizontal_transformation(const HorizontalTransformationData& h);
HorizontalTransformationData decode_horizontal_transformation(const Document& doc);

Document encode_holonomy(const Holonomy& h);
Holonomy decode_holonomy(const Document& doc);

Document encode_folding(const Folding& f, const std::string& kind = "folding");
Folding decode_folding(const Document& doc);

Document encode_connection_pair(const ConnectionPair& cp);
ConnectionPair decode_connection_pair(const Document& doc);

Document encode_thin_structure(const ThinStructure& t);
ThinStructure decode_thin_structure(const Document& doc);

Document encode_folding_morphism(const FoldingMorphism& m);
FoldingMorphism decode_folding_morphism(const Document& doc);

Document encode_folded_double(const FoldedDouble& fd);
FoldedDouble decode_folded_double(const Document& doc);

Document encode_icat_algebra(const ICatAlgebra& x);
ICatAlgebra decode_icat_algebra(const Document& doc);

Document encode_algebra_morphism(const AlgebraMorphism& m);
AlgebraMorphism decode_algebra_morphism(const Document& doc);

Document encode_algebra_two_cell(const AlgebraTwoCell& c);
AlgebraTwoCell decode_algebra_two_cell(const Document& doc);

Document encode_two_functor_under_i(const TwoFunctorUnderI& z);
TwoFunctorUnderI decode_two_functor_under_i(const Document& doc);

Document encode_crossed_module(const CrossedModule& m);
CrossedModule decode_crossed_module(const Document& doc);

Document encode_xmod_under_group(const XModUnderGroup& x);
XModUnderGroup decode_xmod_under_group(const Document& doc);

Document encode_xmod_morphism(const XModMorphism& m);
XModMorphism decode_xmod_morphism(const Document& doc);

Document encode_homotopy(const CrossedHomotopy& h);
CrossedHomotopy decode_homotopy(const Document& doc);

Document encode_two_group(const TwoGroup& t);
TwoGroup decode_two_group(const Document& doc);

Document encode_conjugation_two_cell(const ConjugationTwoCell& w);
ConjugationTwoCell decode_conjugation_two_cell(const Document& doc);

Document encode_pseudo_double(const PseudoDoubleCategory& p);
PseudoDoubleCategory decode_pseudo_double(const Document& doc);

Document encode_pseudo_icat(const PseudoICatAlgebra& p);
PseudoICatAlgebra decode_pseudo_icat(const Document& doc);

}  // namespace foldbox
