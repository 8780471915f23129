//! Golden partial reports. Keys starting with `_` are commentary and are
//! skipped by comparison.

use super::{HodgePosition, Normalization};

pub const EXMP_BAD: &str = r#"{
  "_note": "extension of the trivial object by its Tate twist with nonzero monodromy: a triangulordinary filtration would force crystalline gradeds and the only stable flag has a non-crystalline total graded",
  "dimension": 2,
  "semistable": true,
  "etale": false,
  "weakly_admissible": {
    "value": false,
    "witness": [["1", "0"], ["0", "1"]],
    "endpoint_failure": true
  },
  "crystalline": false,
  "hodge_tate_weights": [0, 0],
  "slopes": [{"slope": "-1", "multiplicity": 1}, {"slope": "0", "multiplicity": 1}],
  "trianguline": {"value": true, "refinements": 1},
  "triangulordinary": [],
  "ordinary": null,
  "bloch_kato_f_equals_g": false,
  "counts": {"stable_subspaces": 3, "triangulordinary": 0}
}
"#;

/// Golden report for `χ^n`. Both normalizations are ordinary; the graded
/// slope is `-w` for weight `w`, never `-1` when `w <= 0`.
pub fn cyclotomic(n: i64, norm: Normalization) -> String {
    let (weight, slope) = match norm {
        Normalization::Homological => (n, -n),
        Normalization::Cohomological => (-n, n),
    };
    let bk = slope != -1;
    let plus = weight <= 0;
    format!(
        r#"{{
  "_note": "one-dimensional, so the trivial flag is the ordinary filtration",
  "dimension": 1,
  "semistable": true,
  "etale": true,
  "crystalline": true,
  "plus_de_rham": {plus},
  "hodge_tate_weights": [{weight}],
  "slopes": [{{"slope": "{slope}", "multiplicity": 1}}],
  "ordinary": {{"weights": [{weight}], "is_ordinary": true, "theorem_applies": true}},
  "triangulordinary": [
    {{"weights": [{weight}], "is_ordinary": true, "slope_hypothesis": true, "theorem_applies": true, "offending_gradeds": []}}
  ],
  "trianguline": {{"value": true, "refinements": 1}},
  "bloch_kato_f_equals_g": {bk},
  "counts": {{"stable_subspaces": 2, "triangulordinary": 1, "theorem_applies": 1}}
}}
"#
    )
}

pub struct ModularPreset {
    pub name: &'static str,
    pub k: i64,
    pub lambda: &'static str,
    pub mu: &'static str,
    pub monodromy: bool,
    pub normalization: Normalization,
    pub line: [i64; 2],
    pub expected: &'static str,
}

pub const MODULAR: &[ModularPreset] = &[
    ModularPreset {
        name: "modular:k=2:ordinary:coh",
        k: 2,
        lambda: "1",
        mu: "3",
        monodromy: false,
        normalization: Normalization::Cohomological,
        line: [0, 1],
        expected: r#"{
  "_note": "split ordinary: the Hodge line is the mu-eigenline, so only the lambda-line gives a filtration",
  "etale": true,
  "crystalline": true,
  "plus_de_rham": true,
  "hodge_tate_weights": [-1, 0],
  "slopes": [{"slope": "0", "multiplicity": 1}, {"slope": "1", "multiplicity": 1}],
  "ordinary": {
    "flag": [[["1", "0"], ["0", "1"]], [["1", "0"]], []],
    "weights": [-1, 0],
    "is_ordinary": true,
    "theorem_applies": true
  },
  "triangulordinary": [
    {
      "flag": [[["1", "0"], ["0", "1"]], [["1", "0"]], []],
      "weights": [-1, 0],
      "is_ordinary": true,
      "slope_hypothesis": true,
      "theorem_applies": true
    }
  ],
  "trianguline": {"value": true, "refinements": 2},
  "bloch_kato_f_equals_g": true,
  "counts": {"stable_subspaces": 4, "triangulordinary": 1, "theorem_applies": 1}
}
"#,
    },
    ModularPreset {
        name: "modular:k=3:slope1:hom",
        k: 3,
        lambda: "3",
        mu: "-3",
        monodromy: false,
        normalization: Normalization::Homological,
        line: [1, 1],
        expected: r#"{
  "_note": "both eigenvalues have slope k-2 = 1; the weight-0 quotient carries slope -1 in either filtration",
  "etale": true,
  "crystalline": true,
  "plus_de_rham": false,
  "hodge_tate_weights": [0, 2],
  "slopes": [{"slope": "-1", "multiplicity": 2}],
  "ordinary": null,
  "triangulordinary": [
    {"weights": [0, 2], "is_ordinary": false, "slope_hypothesis": false, "theorem_applies": false, "offending_gradeds": [0]},
    {"weights": [0, 2], "is_ordinary": false, "slope_hypothesis": false, "theorem_applies": false, "offending_gradeds": [0]}
  ],
  "trianguline": {"value": true, "refinements": 2},
  "bloch_kato_f_equals_g": false,
  "counts": {"stable_subspaces": 4, "triangulordinary": 2, "theorem_applies": 0}
}
"#,
    },
    ModularPreset {
        name: "modular:k=3:slope1:coh",
        k: 3,
        lambda: "3",
        mu: "-3",
        monodromy: false,
        normalization: Normalization::Cohomological,
        line: [1, 1],
        expected: r#"{
  "_note": "cohomologically the only slope is 1, which is nonnegative",
  "etale": true,
  "crystalline": true,
  "plus_de_rham": true,
  "hodge_tate_weights": [-2, 0],
  "slopes": [{"slope": "1", "multiplicity": 2}],
  "ordinary": null,
  "triangulordinary": [
    {"weights": [-2, 0], "is_ordinary": false, "slope_hypothesis": true, "theorem_applies": true, "offending_gradeds": []},
    {"weights": [-2, 0], "is_ordinary": false, "slope_hypothesis": true, "theorem_applies": true, "offending_gradeds": []}
  ],
  "trianguline": {"value": true, "refinements": 2},
  "bloch_kato_f_equals_g": true,
  "counts": {"stable_subspaces": 4, "triangulordinary": 2, "theorem_applies": 2}
}
"#,
    },
    ModularPreset {
        name: "modular:k=4:nonordinary:coh",
        k: 4,
        lambda: "3",
        mu: "18",
        monodromy: false,
        normalization: Normalization::Cohomological,
        line: [1, 1],
        expected: r#"{
  "_note": "non-ordinary with generic Hodge line: each eigenline defines a filtration",
  "etale": true,
  "crystalline": true,
  "hodge_tate_weights": [-3, 0],
  "slopes": [{"slope": "1", "multiplicity": 1}, {"slope": "2", "multiplicity": 1}],
  "ordinary": null,
  "triangulordinary": [
    {"weights": [-3, 0], "is_ordinary": false, "theorem_applies": true},
    {"weights": [-3, 0], "is_ordinary": false, "theorem_applies": true}
  ],
  "trianguline": {"value": true, "refinements": 2},
  "counts": {"stable_subspaces": 4, "triangulordinary": 2, "theorem_applies": 2}
}
"#,
    },
    ModularPreset {
        name: "modular:k=2:monodromy:coh",
        k: 2,
        lambda: "1",
        mu: "3",
        monodromy: true,
        normalization: Normalization::Cohomological,
        line: [0, 1],
        expected: r#"{
  "_note": "nonzero monodromy N(e_mu) = e_lambda: semistable, not crystalline, still ordinary",
  "etale": true,
  "crystalline": false,
  "hodge_tate_weights": [-1, 0],
  "ordinary": {"flag": [[["1", "0"], ["0", "1"]], [["1", "0"]], []], "weights": [-1, 0], "is_ordinary": true},
  "triangulordinary": [{"weights": [-1, 0], "is_ordinary": true, "theorem_applies": true}],
  "trianguline": {"value": true, "refinements": 1},
  "bloch_kato_f_equals_g": true,
  "counts": {"stable_subspaces": 3, "triangulordinary": 1}
}
"#,
    },
    ModularPreset {
        name: "modular:k=2:line-on-lambda:coh",
        k: 2,
        lambda: "1",
        mu: "3",
        monodromy: false,
        normalization: Normalization::Cohomological,
        line: [1, 0],
        expected: r#"{
  "_note": "the Hodge line is the lambda-eigenline, so that line breaks Newton above Hodge",
  "etale": false,
  "weakly_admissible": {"value": false, "witness": [["1", "0"]], "endpoint_failure": false},
  "crystalline": true,
  "counts": {"stable_subspaces": 4, "triangulordinary": 1}
}
"#,
    },
];

pub struct AbelianPreset {
    pub name: &'static str,
    pub id: u8,
    pub position: HodgePosition,
    pub split: bool,
    pub expected: &'static str,
}

pub const ABELIAN: &[AbelianPreset] = &[
    AbelianPreset {
        name: "abelian:1:generic",
        id: 1,
        position: HodgePosition::Generic,
        split: false,
        expected: r#"{
  "_divergence": "the prose census for this scenario lists 4 filtrations, the theorem applying to 2; the formal criterion on this instance admits all 6 two-dimensional stable subspaces as F^1, the 3 containing the slope -1 line being the ones where the theorem applies",
  "etale": true,
  "crystalline": true,
  "plus_de_rham": false,
  "hodge_tate_weights": [0, 0, 1, 1],
  "slopes": [
    {"slope": "-1", "multiplicity": 1},
    {"slope": "-2/3", "multiplicity": 1},
    {"slope": "-1/3", "multiplicity": 1},
    {"slope": "0", "multiplicity": 1}
  ],
  "ordinary": null,
  "trianguline": {"value": true, "refinements": 24},
  "bloch_kato_f_equals_g": false,
  "counts": {"stable_subspaces": 16, "triangulordinary": 6, "theorem_applies": 3}
}
"#,
    },
    AbelianPreset {
        name: "abelian:1:contains_slope0",
        id: 1,
        position: HodgePosition::ContainsSlope0,
        split: false,
        expected: r#"{
  "_divergence": "the prose census lists 2 filtrations when the slope-0 line lies in H; the formal criterion also admits F^1 with slopes (-2/3, -1/3)",
  "etale": true,
  "crystalline": true,
  "hodge_tate_weights": [0, 0, 1, 1],
  "ordinary": null,
  "counts": {"stable_subspaces": 16, "triangulordinary": 3, "theorem_applies": 2}
}
"#,
    },
    AbelianPreset {
        name: "abelian:2:generic:split",
        id: 2,
        position: HodgePosition::Generic,
        split: true,
        expected: r#"{
  "_note": "slope -1/2 split into two eigenlines over the ramified field",
  "etale": true,
  "crystalline": true,
  "hodge_tate_weights": [0, 0, 1, 1],
  "slopes": [
    {"slope": "-1", "multiplicity": 1},
    {"slope": "-1/2", "multiplicity": 2},
    {"slope": "0", "multiplicity": 1}
  ],
  "ordinary": null,
  "trianguline": {"value": true, "refinements": 24},
  "counts": {"stable_subspaces": 16, "triangulordinary": 6, "theorem_applies": 3}
}
"#,
    },
    AbelianPreset {
        name: "abelian:2:generic:irreducible",
        id: 2,
        position: HodgePosition::Generic,
        split: false,
        expected: r#"{
  "_note": "slope -1/2 part irreducible over Q_p: F^1 is either that block or the slope -1 and slope 0 lines",
  "etale": true,
  "crystalline": true,
  "hodge_tate_weights": [0, 0, 1, 1],
  "slopes": [
    {"slope": "-1", "multiplicity": 1},
    {"slope": "-1/2", "multiplicity": 2},
    {"slope": "0", "multiplicity": 1}
  ],
  "ordinary": null,
  "trianguline": {"value": false, "refinements": 0},
  "counts": {"stable_subspaces": 8, "triangulordinary": 2, "theorem_applies": 1}
}
"#,
    },
    AbelianPreset {
        name: "abelian:3:generic",
        id: 3,
        position: HodgePosition::Generic,
        split: false,
        expected: r#"{
  "_note": "Frobenius irreducible on each pure-slope part: no stable subspace of half the dimension",
  "etale": true,
  "crystalline": true,
  "hodge_tate_weights": [0, 0, 0, 0, 1, 1, 1, 1],
  "slopes": [
    {"slope": "-1", "multiplicity": 3},
    {"slope": "-1/2", "multiplicity": 2},
    {"slope": "0", "multiplicity": 3}
  ],
  "ordinary": null,
  "triangulordinary": [],
  "trianguline": {"value": false, "refinements": 0},
  "counts": {"stable_subspaces": 8, "triangulordinary": 0, "theorem_applies": 0}
}
"#,
    },
];
