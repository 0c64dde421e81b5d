//! Worked examples with their stated values, recomputed from scratch.
//!
//! Each row pairs a claimed value with a closure that recomputes it. Rows
//! whose claim is known to be wrong stay in the table with a note, so the
//! harness reports them as failures instead of silently agreeing.

use serde::Serialize;
use serde_json::{json, Value};
use sgfl_core::factorization::{factorizations, longest, shortest};
use sgfl_core::kunz::{self, point_of_semigroup, semigroup_of_point, KunzContext, KunzPoint};
use sgfl_core::minrepl::analyze;
use sgfl_core::verdict::{candidate_atoms, check_formula, embdim3_check, oracle_scan};
use sgfl_core::{Element, Formula, Result, Semigroup, Verdict};

type Compute = Box<dyn Fn(u64) -> Result<Value> + Send + Sync>;

pub struct Row {
    pub id: &'static str,
    pub expected: Value,
    pub note: Option<&'static str>,
    compute: Compute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RowResult {
    pub id: &'static str,
    pub status: Status,
    pub expected: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl Row {
    fn new(id: &'static str, expected: Value, compute: impl Fn(u64) -> Result<Value> + Send + Sync + 'static) -> Self {
        Row { id, expected, note: None, compute: Box::new(compute) }
    }

    fn known_wrong(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self
    }

    /// Replaces the expected value, keeping set semantics if the row had them.
    pub fn set_expected(&mut self, value: Value) {
        let unordered = matches!(&self.expected, Value::Object(m) if m.len() == 1 && m.contains_key("set"));
        self.expected = if unordered && value.is_array() { set(value) } else { value };
    }

    pub fn evaluate(&self, budget: u64) -> RowResult {
        let expected = canonical(&self.expected);
        let (status, actual, error) = match (self.compute)(budget).map(|v| canonical(&v)) {
            Ok(v) if v == expected => (Status::Pass, Some(v), None),
            Ok(v) => (Status::Fail, Some(v), None),
            Err(e) => (Status::Error, None, Some(e.to_string())),
        };
        RowResult { id: self.id, status, expected, actual, error, note: self.note }
    }
}

/// Unwraps `{"set": [...]}` into a sorted array so sets compare without
/// regard to order.
fn canonical(v: &Value) -> Value {
    match v {
        Value::Object(map) if map.len() == 1 && map.contains_key("set") => {
            let mut items: Vec<Value> = map["set"].as_array().cloned().unwrap_or_default();
            items.sort_by_key(|x| x.to_string());
            Value::Array(items)
        }
        Value::Object(map) => Value::Object(map.iter().map(|(k, x)| (k.clone(), canonical(x))).collect()),
        Value::Array(items) => Value::Array(items.iter().map(canonical).collect()),
        other => other.clone(),
    }
}

fn set<T: Serialize>(items: T) -> Value {
    json!({ "set": items })
}

fn e(n: i64) -> Element {
    Element::scalar(n)
}

fn v2(a: i64, b: i64) -> Element {
    Element::new(vec![a, b])
}

fn s1() -> Semigroup {
    Semigroup::numerical(&[10, 12, 21, 38]).expect("valid")
}

fn plane() -> Semigroup {
    Semigroup::affine(&[[2, 0], [3, 1], [0, 5]]).expect("valid")
}

fn plane5() -> Semigroup {
    Semigroup::affine(&[[3, 0], [7, 0], [11, 0], [6, 1], [0, 3]]).expect("valid")
}

fn chicken() -> Semigroup {
    Semigroup::numerical(&[6, 9, 20]).expect("valid")
}

fn ctx5() -> KunzContext {
    KunzContext::numerical(5).expect("valid modulus")
}

fn point(x: &[i64]) -> Result<KunzPoint> {
    KunzPoint::new(&ctx5(), x.to_vec())
}

fn checked_at(v: &Verdict, s: &Element) -> Value {
    match v.checked.iter().find(|c| &c.s == s) {
        Some(c) => json!({"value": c.value, "predicted": c.predicted}),
        None => Value::Null,
    }
}

fn kunz_longest(x: &[i64]) -> Result<Value> {
    let kv = point(x)?.main_verdict(Formula::LongestPlusOne)?;
    let t = kv.templates.iter().find(|t| t.c == [3, 0]);
    Ok(json!({
        "holds": kv.holds,
        "-x_3 + 3x_1": t.map(|t| t.lhs_value),
        "rhs": t.map(|t| t.rhs),
    }))
}

fn three_methods(s: &Semigroup, m: i64, formula: Formula, budget: u64) -> Result<Value> {
    let m = e(m);
    Ok(json!({
        "minrepl": check_formula(s, &m, formula, budget)?.holds,
        "embdim3": embdim3_check(s, formula, budget)?.holds,
        "oracle": oracle_scan(s, &m, formula, None, false, false)?.holds,
    }))
}

fn holds_by_atom(s: &Semigroup, formula: Formula, budget: u64) -> Result<Value> {
    let mut out = serde_json::Map::new();
    for m in s.generators() {
        out.insert(m.to_string(), json!(check_formula(s, m, formula, budget)?.holds));
    }
    Ok(Value::Object(out))
}

/// Every worked example, in a fixed order.
pub fn worked_examples() -> Vec<Row> {
    vec![
        Row::new("member-48", json!(true), |_| Ok(json!(s1().contains(&e(48))))),
        Row::new("divides-48-84", json!(true), |_| Ok(json!(s1().divides(&e(48), &e(84))))),
        Row::new("divides-48-42", json!(false), |_| Ok(json!(s1().divides(&e(48), &e(42))))),
        Row::new("divides-42-48", json!(false), |_| Ok(json!(s1().divides(&e(42), &e(48))))),
        Row::new("factorizations-48", set([[0, 4, 0, 0], [1, 0, 0, 1]]), |b| {
            Ok(set(factorizations(&s1(), &e(48), b)?))
        }),
        Row::new("lengths-48", json!({"L": 4, "l": 2}), |b| {
            Ok(json!({"L": longest(&s1(), &e(48), b)?.0, "l": shortest(&s1(), &e(48), b)?.0}))
        }),
        Row::new("apery-5-6-8", json!([0, 6, 12, 8, 14]), |_| {
            Ok(json!(Semigroup::numerical(&[5, 6, 8])?.apery_set(5)?))
        }),
        Row::new("factorizations-27-9-include-0-9-0", json!(true), |b| {
            let all = factorizations(&plane(), &v2(27, 9), b)?;
            Ok(json!(all.iter().any(|c| c.exponents() == [0, 9, 0])))
        }),
        Row::new("lengths-30-10", json!({"L": 17, "l": 10}), |b| {
            let v = v2(30, 10);
            Ok(json!({"L": longest(&plane(), &v, b)?.0, "l": shortest(&plane(), &v, b)?.0}))
        }),
        Row::new("longest-27-9", json!(9), |b| Ok(json!(longest(&plane(), &v2(27, 9), b)?.0))),
        Row::new("minrepl-10-vectors", set([[4, 0, 0], [0, 2, 0], [0, 0, 2], [1, 0, 1]]), |b| {
            Ok(set(analyze(&s1(), &e(10), b)?.minimal_vectors))
        }),
        Row::new("minrepl-10-evaluations", set([48, 42, 72, 50]), |b| {
            Ok(set(analyze(&s1(), &e(10), b)?.evaluations))
        })
        .known_wrong("(0,0,2) over (12,21,38) evaluates to 2*38 = 76, not 72"),
        Row::new(
            "minrepl-38-vectors",
            set([[5, 0, 0], [0, 4, 0], [0, 0, 4], [4, 3, 0], [2, 0, 2], [0, 3, 2], [1, 2, 2]]),
            |b| Ok(set(analyze(&s1(), &e(38), b)?.minimal_vectors)),
        ),
        Row::new("minrepl-38-evaluations", set([50, 48, 84, 76, 62, 78, 76]), |b| {
            Ok(set(analyze(&s1(), &e(38), b)?.evaluations))
        }),
        Row::new("minrepl-2-0", set([[10, 0]]), |b| Ok(set(analyze(&plane(), &v2(2, 0), b)?.minimal_vectors))),
        Row::new("minrepl-3-1", set([[15, 2]]), |b| Ok(set(analyze(&plane(), &v2(3, 1), b)?.minimal_vectors))),
        Row::new("minrepl-0-5", set([[0, 10]]), |b| Ok(set(analyze(&plane(), &v2(0, 5), b)?.minimal_vectors))),
        Row::new("extremal-factorizations-30-10", json!({"longest": [[15, 0, 2]], "shortest": [[0, 10, 0]]}), |b| {
            let all = factorizations(&plane(), &v2(30, 10), b)?;
            let with_length = |n: u32| all.iter().filter(|c| c.length() == n).cloned().collect::<Vec<_>>();
            Ok(json!({"longest": with_length(17), "shortest": with_length(10)}))
        }),
        Row::new(
            "minrepl-3-0",
            set([[3, 0, 0, 0], [0, 3, 0, 0], [0, 0, 3, 0], [1, 1, 0, 0]]),
            |b| Ok(set(analyze(&plane5(), &v2(3, 0), b)?.minimal_vectors)),
        )
        .known_wrong(
            "2*(7,0) - (3,0) = (11,0) is an atom, so (2,0,0,0) is replaceable; \
             2*(11,0) - (3,0) = (19,0) = 4*(3,0) + (7,0), so (0,2,0,0) is too",
        ),
        Row::new("candidates-10", json!({"M1": [48], "N1": [48]}), |b| {
            let r = analyze(&s1(), &e(10), b)?;
            Ok(json!({"M1": r.m1, "N1": r.n1}))
        }),
        Row::new("candidates-38", json!({"M2": set([50, 48, 76]), "N2": [48]}), |b| {
            let r = analyze(&s1(), &e(38), b)?;
            Ok(json!({"M2": set(r.m2), "N2": r.n2}))
        }),
        Row::new("candidates-3-0", json!({"M1": []}), |b| Ok(json!({"M1": analyze(&plane5(), &v2(3, 0), b)?.m1}))),
        Row::new("candidate-atoms", json!({"longest": [10], "shortest": [38]}), |_| {
            Ok(json!({
                "longest": candidate_atoms(&s1(), Formula::LongestPlusOne),
                "shortest": candidate_atoms(&s1(), Formula::ShortestPlusOne),
            }))
        }),
        Row::new("longest-at-10", json!({"holds": false, "at-48": {"value": 4, "predicted": 2}}), |b| {
            let v = check_formula(&s1(), &e(10), Formula::LongestPlusOne, b)?;
            Ok(json!({"holds": v.holds, "at-48": checked_at(&v, &e(48))}))
        }),
        Row::new("shortest-48", json!({"l(48)": 2, "l(10)+1": 2}), |b| {
            Ok(json!({"l(48)": shortest(&s1(), &e(48), b)?.0, "l(10)+1": shortest(&s1(), &e(10), b)?.0 + 1}))
        }),
        Row::new("shortest-at-38", json!({"holds": true}), |b| {
            Ok(json!({"holds": check_formula(&s1(), &e(38), Formula::ShortestPlusOne, b)?.holds}))
        })
        .known_wrong(
            "84 = 46 + 38 with l(84) = 4 (4*21) and l(46) = 4 (10+3*12); \
             (0,0,4) in MinRepl_38 evaluates to 84, which N2 omits",
        ),
        Row::new("longest-at-3-1", json!({"holds": false, "at-30-10": {"value": 17, "predicted": 10}}), |b| {
            let v = check_formula(&plane(), &v2(3, 1), Formula::LongestPlusOne, b)?;
            Ok(json!({"holds": v.holds, "at-30-10": checked_at(&v, &v2(30, 10))}))
        }),
        Row::new("longest-plane-by-atom", json!({"(2,0)": true, "(3,1)": false, "(0,5)": true}), |b| {
            holds_by_atom(&plane(), Formula::LongestPlusOne, b)
        }),
        Row::new("shortest-plane-by-atom", json!({"(2,0)": false, "(3,1)": true, "(0,5)": false}), |b| {
            holds_by_atom(&plane(), Formula::ShortestPlusOne, b)
        }),
        Row::new("longest-at-3-0", json!(true), |b| {
            Ok(json!(check_formula(&plane5(), &v2(3, 0), Formula::LongestPlusOne, b)?.holds))
        }),
        Row::new("longest-6-9-20", json!({"minrepl": true, "embdim3": true, "oracle": true}), |b| {
            three_methods(&chicken(), 6, Formula::LongestPlusOne, b)
        }),
        Row::new("shortest-6-9-20", json!({"minrepl": true, "embdim3": true, "oracle": true}), |b| {
            three_methods(&chicken(), 20, Formula::ShortestPlusOne, b)
        }),
        Row::new("longest-5-6-8", json!(true), |b| {
            let s = Semigroup::numerical(&[5, 6, 8])?;
            Ok(json!(check_formula(&s, &e(5), Formula::LongestPlusOne, b)?.holds))
        }),
        Row::new("kunz-point-5-6-8", json!([0, 1, 2, 1, 2]), |_| {
            Ok(json!(point_of_semigroup(&ctx5(), &Semigroup::numerical(&[5, 6, 8])?)?.coords()))
        }),
        Row::new("kunz-point-5-13-16", json!([0, 3, 6, 2, 5]), |_| {
            Ok(json!(point_of_semigroup(&ctx5(), &Semigroup::numerical(&[5, 13, 16])?)?.coords()))
        }),
        Row::new(
            "kunz-rho",
            json!({"0,1,2,1,2": [5, 6, 8], "0,3,6,2,5": [5, 13, 16], "0,11,22,32,43": [5, 56, 163], "0,3,6,8,11": [5, 16, 43]}),
            |_| {
                let mut out = serde_json::Map::new();
                for x in [[0, 1, 2, 1, 2], [0, 3, 6, 2, 5], [0, 11, 22, 32, 43], [0, 3, 6, 8, 11]] {
                    let key = x.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
                    out.insert(key, json!(semigroup_of_point(&point(&x)?).generators()));
                }
                Ok(Value::Object(out))
            },
        ),
        Row::new("kunz-covers", set([[0, 1], [1, 2], [0, 3], [3, 4], [1, 4]]), |_| {
            Ok(set(point(&[0, 1, 2, 1, 2])?.covers()))
        }),
        Row::new("kunz-same-face", json!(true), |_| {
            Ok(json!(point(&[0, 1, 2, 1, 2])?.same_face(&point(&[0, 11, 22, 32, 43])?)))
        }),
        Row::new("kunz-atoms", json!({"residues": [1, 3], "elements": [6, 8]}), |_| {
            let x = point(&[0, 1, 2, 1, 2])?;
            let elements: Vec<i64> = x.atoms().iter().map(|&a| x.apery_element(a)).collect();
            Ok(json!({"residues": x.atoms(), "elements": elements}))
        }),
        Row::new("kunz-min-inf", set([[3, 0], [0, 2], [2, 1]]), |_| {
            let x = point(&[0, 1, 2, 1, 2])?;
            Ok(set(x.min_inf_factorizations().iter().map(|f| f.c.clone()).collect::<Vec<_>>()))
        }),
        Row::new("kunz-b", json!({"b((3,0),(0,2))": 0, "b((0,2),(3,0))": 1}), |_| {
            let x = point(&[0, 1, 2, 1, 2])?;
            Ok(json!({
                "b((3,0),(0,2))": x.structure_constants(&[3, 0], &[0, 2])?.1,
                "b((0,2),(3,0))": x.structure_constants(&[0, 2], &[3, 0])?.1,
            }))
        }),
        Row::new("kunz-sq-3-0-0-2", json!(false), |_| Ok(json!(point(&[0, 1, 2, 1, 2])?.sq_leq(&[3, 0], &[0, 2])))),
        Row::new("kunz-pseudomin", set([[3, 0], [0, 2], [2, 1]]), |_| {
            let x = point(&[0, 1, 2, 1, 2])?;
            Ok(set(x.pseudomin().into_iter().map(|f| f.c).collect::<Vec<_>>()))
        }),
        Row::new(
            "kunz-cominimal",
            json!({"0,11,22,32,43": true, "0,3,6,8,11": true, "0,3,6,2,5": true}),
            |_| {
                let x = point(&[0, 1, 2, 1, 2])?;
                Ok(json!({
                    "0,11,22,32,43": kunz::cominimal(&x, &point(&[0, 11, 22, 32, 43])?)?,
                    "0,3,6,8,11": kunz::cominimal(&x, &point(&[0, 3, 6, 8, 11])?)?,
                    "0,3,6,2,5": kunz::cominimal(&x, &point(&[0, 3, 6, 2, 5])?)?,
                }))
            },
        ),
        Row::new("kunz-reduced-m-atom", json!({"reduced": true, "m_atom": true}), |_| {
            let x = point(&[0, 1, 2, 1, 2])?;
            Ok(json!({"reduced": x.is_reduced(), "m_atom": x.is_m_atom()}))
        }),
        Row::new("kunz-longest-0-1-2-1-2", json!({"holds": true, "-x_3 + 3x_1": 2, "rhs": 2}), |_| {
            kunz_longest(&[0, 1, 2, 1, 2])
        }),
        Row::new("kunz-longest-0-11-22-32-43", json!({"holds": false, "-x_3 + 3x_1": 1, "rhs": 2}), |_| {
            kunz_longest(&[0, 11, 22, 32, 43])
        }),
        Row::new("kunz-longest-0-3-6-2-5", json!({"holds": true, "-x_3 + 3x_1": 7, "rhs": 2}), |_| {
            kunz_longest(&[0, 3, 6, 2, 5])
        }),
        Row::new("kunz-longest-0-3-6-8-11", json!({"holds": false}), |_| {
            Ok(json!({"holds": point(&[0, 3, 6, 8, 11])?.main_verdict(Formula::LongestPlusOne)?.holds}))
        }),
    ]
}
