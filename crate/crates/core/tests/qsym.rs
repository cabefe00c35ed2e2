use rand::Rng;
use wqsym_core::charseries::{adams, eulerian_idempotent, sigma_hat};
use wqsym_core::packedword::{compositions_of, Composition, PackedWord};
use wqsym_core::param::{Param, ParamPoly};
use wqsym_core::qsym::*;
use wqsym_core::rational::int;
use wqsym_core::verify::{case_rng, sample};
use wqsym_core::WQSymElement;

fn c(v: &[u32]) -> Composition {
    Composition::new(v).unwrap()
}

fn q(v: &[u32]) -> QSymElement {
    QSymElement::basis(c(v))
}

#[test]
fn worked_adams_examples() {
    for n in 1..=5 {
        assert_eq!(qsym_adams(2, &q(&[n]), 5).unwrap(), q(&[n]).scale(&int(2)));
    }
    for (i, j) in [(1, 1), (1, 2), (2, 3)] {
        let want = &(&q(&[i, j]).scale(&int(3)) + &q(&[j, i])) + &q(&[i + j]);
        assert_eq!(qsym_adams(2, &q(&[i, j]), 5).unwrap(), want, "({i},{j})");
    }
}

#[test]
fn adams_matches_the_coproduct_oracle() {
    for w in 0..=5 {
        for comp in compositions_of(w) {
            let f = QSymElement::basis(comp.clone());
            for k in 0..=3 {
                assert_eq!(qsym_adams(k, &f, 5).unwrap(), f.adams_by_coproduct(k), "{comp} k={k}");
            }
        }
    }
}

#[test]
fn action_is_a_right_module() {
    for case in 0..100 {
        let mut rng = case_rng(1, "qsym-module", case);
        let w = rng.gen_range(1..=5);
        let l = rng.gen_range(1..=w);
        let f = sample::qsym(&mut rng, w, 2);
        let u = sample::packed_word(&mut rng, l);
        let v = sample::packed_word(&mut rng, u.breadth());
        let (mu, mv) = (WQSymElement::basis(u), WQSymElement::basis(v));
        assert_eq!(f.act(&mu).act(&mv), f.act(&mu.internal(&mv)));
    }
}

#[test]
fn adams_is_an_algebra_map_and_composes() {
    let psi: Vec<_> = (0..=9).map(|k| adams(k, 4)).collect();
    for case in 0..60 {
        let mut rng = case_rng(2, "qsym-adams", case);
        let a = rng.gen_range(1..=3);
        let b = rng.gen_range(1..=4 - a);
        let (f, g) = (sample::qsym(&mut rng, a, 2), sample::qsym(&mut rng, b, 2));
        let k = rng.gen_range(1..=3);
        assert_eq!(
            f.product(&g).act_series(&psi[k]).unwrap(),
            f.act_series(&psi[k]).unwrap().product(&g.act_series(&psi[k]).unwrap())
        );
    }
    for n in 1..=4 {
        for comp in compositions_of(n) {
            let f = QSymElement::basis(comp);
            for k in 1..=3 {
                for l in 1..=3 {
                    let lhs = f.act_series(&psi[k]).unwrap().act_series(&psi[l]).unwrap();
                    assert_eq!(lhs, f.act_series(&psi[k * l]).unwrap());
                }
            }
        }
    }
}

#[test]
fn commutative_image_is_multiplicative() {
    for case in 0..100 {
        let mut rng = case_rng(3, "abelian", case);
        let a = rng.gen_range(0..=3);
        let b = rng.gen_range(0..=5 - a);
        let (f, g) = (sample::wqsym(&mut rng, a, 2), sample::wqsym(&mut rng, b, 2));
        assert_eq!(commutative_image(&f.outer(&g)), commutative_image(&f).product(&commutative_image(&g)));
    }
}

#[test]
fn sigma_specializations_on_qsym() {
    let f = &q(&[2, 1, 3]) + &q(&[4]).scale(&int(-3));
    assert_eq!(f.act_series(&sigma_hat(&int(1), 4)).unwrap(), f);
    let g = &f + &QSymElement::unit();
    assert_eq!(g.act_series(&sigma_hat(&int(0), 4)).unwrap(), QSymElement::unit());
    let t = ParamPoly::var(Param::T);
    for comp in compositions_of(4) {
        let got = deformed_act(&QSymElement::basis(comp.clone()), &sigma_hat_param(&t, 4)).unwrap();
        assert_eq!(got, ParamQSym::from_terms([(comp.clone(), t.pow(comp.len()))]));
    }
}

#[test]
fn deformed_adams_for_two_parts() {
    let (x, y) = (ParamPoly::var(Param::X), ParamPoly::var(Param::Y));
    let op = sigma_hat_param(&x, 5).product(&sigma_hat_param(&y, 5));
    let xy = x.mul(&y);
    for (i, j) in [(1, 1), (1, 2), (2, 3), (3, 1)] {
        let got = deformed_act(&q(&[i, j]), &op).unwrap();
        let diag = x.pow(2).add(&xy).add(&y.pow(2));
        let want = if i == j {
            ParamQSym::from_terms([(c(&[i, j]), diag.add(&xy)), (c(&[i + j]), xy.clone())])
        } else {
            ParamQSym::from_terms([(c(&[i, j]), diag), (c(&[j, i]), xy.clone()), (c(&[i + j]), xy.clone())])
        };
        assert_eq!(got, want, "({i},{j})");
    }
}

#[test]
fn generators_have_full_rank() {
    let report = lyndon_generator_report(5).unwrap();
    let counts: Vec<usize> = report.iter().map(|g| g.lyndon.len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 3, 6]);
    for g in &report {
        assert_eq!(g.dimension, 1 << (g.weight - 1));
        assert_eq!(g.rank, g.dimension, "weight {}", g.weight);
        assert!(g.full_rank);
    }
}

#[test]
fn e1_is_a_projection_onto_lyndon_span() {
    for n in 1..=5 {
        let check = e1_projection_property_check(n).unwrap();
        assert!(check.idempotent && check.kills_products, "n = {n}");
        assert_eq!(check.image_rank, check.lyndon_count, "n = {n}");
    }
    let e1 = eulerian_idempotent(1, 3);
    assert!(q(&[1]).product(&q(&[2])).act_series(&e1).unwrap().is_zero());
}

#[test]
fn qsym_instance_of_the_action() {
    let u = PackedWord::new(&[1, 2, 1, 2, 1]).unwrap();
    assert_eq!(q(&[2, 1, 3, 2, 2]).act(&WQSymElement::basis(u)), q(&[7, 3]));
}
