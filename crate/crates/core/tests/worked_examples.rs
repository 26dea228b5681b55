use jlcalc::duality::{dual_irr, mw_dual};
use jlcalc::gkring::{expand_u, speh_u, speh_u_prime, speh_ubar, ubar_factor, Side, VirtualRep};
use jlcalc::global::{
    d_compatible_mw, g_inverse, local_component, match_discrete_products, s_rho_d, DiscreteSeriesLabel,
    GlobalAlgebra, GlobalCuspidalData, LocalComponent,
};
use jlcalc::lfactors::{eps_irr, l_esi, l_irr, normalizing_factor, rs_lg, FormalLFactor, FormalRSProduct};
use jlcalc::transfer::{c_map, in_image_lju, lj_generic, lj_std, lj_u};
use jlcalc::{q, qi, LineId, LineRegistry, Multisegment, Segment, SpehUnit, UnitaryProduct};

fn setup() -> (LineRegistry, LineId) {
    let reg = LineRegistry::standard();
    let rho = reg.lookup("rho").unwrap();
    (reg, rho)
}

fn split(rho: LineId, bounds: &[(i64, i64)]) -> Multisegment {
    bounds.iter().map(|&(a, b)| Segment::from_bounds(rho, qi(a), qi(b), 1).unwrap()).collect()
}

#[test]
fn steinberg_is_dual_to_trivial() {
    let (_, rho) = setup();
    assert_eq!(mw_dual(&split(rho, &[(0, 2)])).unwrap(), split(rho, &[(0, 0), (1, 1), (2, 2)]));
    assert_eq!(dual_irr(&split(rho, &[(-1, 0), (0, 1)])), split(rho, &[(-1, 0), (0, 1)]));
}

#[test]
fn speh_duality_swaps_on_both_sides() {
    let (_, rho) = setup();
    assert_eq!(dual_irr(&speh_u(3, rho, 2, qi(0))), speh_u(2, rho, 3, qi(0)));
    let sigma = Segment::centered(rho, qi(0), 2, 2);
    let tau = Segment::centered(rho, qi(0), 3, 2);
    assert_eq!(dual_irr(&speh_ubar(&sigma, 6, qi(0))), speh_ubar(&tau, 4, qi(0)));
}

#[test]
fn steinberg_of_size_d_goes_to_a_character() {
    let (reg, rho) = setup();
    let st2 = Segment::centered(rho, qi(0), 2, 1);
    assert_eq!(c_map(&st2, 2, &reg).unwrap(), Segment::new(rho, qi(0), 1, 2));
    let x = VirtualRep::basis(Side::Split, Multisegment::new([st2]));
    let image = lj_std(&x, 2, &reg).unwrap();
    assert_eq!(image.coeff(&Multisegment::new([Segment::new(rho, qi(0), 1, 2)])), 1);
}

#[test]
fn speh_transfer_examples() {
    let (reg, rho) = setup();
    let sigma = c_map(&Segment::centered(rho, qi(0), 2, 1), 2, &reg).unwrap();
    let t = lj_u(2, rho, 3, 2, &reg).unwrap();
    assert_eq!(t.sign, 1);
    assert_eq!(t.product, ubar_factor(&sigma, 3));
    assert!(lj_u(1, rho, 1, 2, &reg).unwrap().is_zero());
    let t = lj_u(1, rho, 2, 2, &reg).unwrap();
    assert_eq!(t.sign, -1);
    assert_eq!(t.product.multisegment(), Multisegment::new([Segment::new(rho, qi(0), 1, 2)]));
    assert_eq!(lj_std(&expand_u(1, rho, 2), 2, &reg).unwrap(), t.expand(2));
}

#[test]
fn generic_transfer_examples() {
    let (reg, rho) = setup();
    let st2 = (Segment::centered(rho, qi(0), 2, 1), qi(0));
    let cusp = (Segment::centered(rho, qi(0), 1, 1), qi(0));
    let t = lj_generic(&[st2], 1, 2, &reg).unwrap();
    assert_eq!((t.sign, t.product.multisegment()), (1, Multisegment::new([Segment::new(rho, qi(0), 1, 2)])));
    assert_eq!(lj_generic(&[cusp], 2, 2, &reg).unwrap().sign, -1);
    assert!(lj_generic(&[cusp], 3, 2, &reg).unwrap().is_zero());
    assert!(lj_generic(&[(cusp.0, q(1, 2))], 2, 2, &reg).is_err());
}

#[test]
fn preimage_search_examples() {
    let (reg, rho) = setup();
    assert_eq!(in_image_lju(&UnitaryProduct::empty(), 2, &reg, 10).unwrap(), Some(UnitaryProduct::empty()));
    let sigma = Segment::centered(rho, qi(0), 1, 2);
    let witness = in_image_lju(&ubar_factor(&sigma, 4), 2, &reg, 10).unwrap().unwrap();
    assert_eq!(witness, UnitaryProduct::new([SpehUnit::new(Segment::centered(rho, qi(0), 2, 1), 4, qi(0))]));
    let wide = UnitaryProduct::new((0..11).map(|_| SpehUnit::new(sigma, 1, qi(0))));
    assert!(in_image_lju(&wide, 2, &reg, 10).is_err());
}

#[test]
fn l_factors_of_the_trivial_and_steinberg_representations() {
    let (reg, rho) = setup();
    // L(s, 1′_1) = (1 − q^{−s−(d−1)/2})^{−1}
    for d in 1..=4 {
        let one = Segment::new(rho, qi(0), 1, d);
        assert_eq!(l_esi(&one, d, &reg).unwrap(), FormalLFactor::new([q(d as i64 - 1, 2)]));
    }
    let one3 = speh_u_prime(&Segment::new(rho, qi(0), 1, 2), 3, qi(0));
    assert_eq!(l_irr(&one3, 2, &reg).unwrap(), FormalLFactor::new([q(5, 2), q(1, 2), q(-3, 2)]));
    assert_eq!(eps_irr(&one3, 2, &reg).unwrap().terms().len(), 6);
    assert_eq!(
        l_esi(&Segment::centered(rho, qi(0), 3, 2), 2, &reg).unwrap().to_string(),
        "(1 - q^(-s-5/2))^-1"
    );
}

#[test]
fn rankin_selberg_examples() {
    assert_eq!(rs_lg(2), FormalRSProduct::new([(0, 2), (1, 1), (-1, 1)]));
    let (num, den) = normalizing_factor(2);
    assert_eq!(num.to_string(), "L(z-1) L(z)");
    assert_eq!(den.to_string(), "L(z+1) L(z+2)");
}

#[test]
fn global_flow_from_json() {
    let (reg, _) = setup();
    let alg = GlobalAlgebra::from_json(r#"{"places":[{"name":"v0","d_v":2},{"name":"v1","d_v":3}]}"#).unwrap();
    let rho = GlobalCuspidalData::from_json(
        r#"{"name":"pi","line":"rho","locals":{"v0":[{"segment":["0","0"]}],"v1":[{"segment":["0","0"]}],"w":[{"segment":["-1/2","1/2"]}]}}"#,
        &reg,
    )
    .unwrap();
    assert_eq!(s_rho_d(&rho, &alg, &reg).unwrap(), 6);
    assert!(d_compatible_mw(&rho, 12, &alg, &reg).unwrap());
    assert_eq!(
        g_inverse(&DiscreteSeriesLabel::mw("pi", 12), &rho, &alg, &reg).unwrap(),
        DiscreteSeriesLabel::mw_prime("pi'", 2)
    );
    match local_component(&rho, 6, "v1", &alg, &reg).unwrap() {
        LocalComponent::Inner(t) => assert!(!t.is_zero()),
        other => panic!("{other:?}"),
    }
    match local_component(&rho, 2, "w", &alg, &reg).unwrap() {
        LocalComponent::Split(p) => assert_eq!(p.multisegment(), speh_u(2, p.units()[0].base.line, 2, qi(0))),
        other => panic!("{other:?}"),
    }
}

#[test]
fn discrete_products_are_told_apart_by_support() {
    let a = [DiscreteSeriesLabel::mw("rho", 3), DiscreteSeriesLabel::mw("rho", 1)];
    let b = [DiscreteSeriesLabel::mw("rho", 2), DiscreteSeriesLabel::mw("rho", 2)];
    assert!(!match_discrete_products(&a, &b));
    assert!(match_discrete_products(&b, &b));
}
