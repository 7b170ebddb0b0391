#pragma once

// The shipped example catalog: small groups, one-object groupoids, box
// categories of commutative squares, quintets of two 2-groups, H/V
// embeddings, adjunctions, crossed modules, and two double groups with
// folding. Built once, shared by tests, the acceptance suite, and the CLI.

#include "foldbox/pseudo.hpp"

namespace foldbox::catalog {

FinGroup cyclic(int n, const std::string& stem = "g");  // e, <stem>1, ...
FinGroup c2();  // {e, t}
FinGroup c3();
FinGroup c4();  // {e, c, c2, c3}
FinGroup c6();
FinGroup s3();  // {e, r, r2, s, sr, sr2}
FinGroup klein();  // {e, a, b, ab}

CrossedModule xm_c2_c4();      // C2 -> C4 sending t to c2, trivial action
CrossedModule xm_c3_s3();      // inclusion of the normal C3 in S3, conjugation
CrossedModule xm_c3_c2_inv();  // trivial boundary, C2 acts on C3 by inversion
CrossedModule xm_klein_s3();   // trivial boundary, S3 permutes the involutions
CrossedModule xm_cn_c2_inv(int n);  // trivial boundary, inversion action

struct FoldedEntry {
    std::string name;
    DoubleCategory d;
    Folding fold;
};

struct Entry {
    std::string name;
    std::string kind;
};

struct Catalog {
    FinGroupoid bc2, bc3, bs3;
    FinCategory terminal;

    DoubleCategory box_bc2, box_bc3, box_bs3;
    Folding box_bc2_fold, box_bc3_fold, box_bs3_fold;

    TwoGroupData tg1;  // 2-group of xm_c2_c4: 4 one-cells, 8 cells
    TwoGroupData tg2;  // 2-group of xm_c3_c2_inv: 2 one-cells, 6 cells
    QuintetData qtg1, qtg2;
    Folding qtg1_fold, qtg2_fold;

    DoubleCategory htg2, vtg2;
    Folding htg2_fold;

    AdjunctionData adtg2;
    Folding adtg2_fold;

    CrossedModule xm1, xm2, xm3;

    XModUnderGroup dg1_src;  // xm1 under I = C4 (identity P)
    XModUnderGroup dg2_src;  // xm1 under I = C2 (inclusion P)
    FoldedDouble dg1, dg2;

    std::vector<FoldedEntry> folded() const;  // every catalog double category with folding
};

const Catalog& get();

}  // namespace foldbox::catalog
