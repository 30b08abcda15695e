use dlcurves::curves::CurveSpec;
use dlcurves::local_series::{expand_coordinates, PrecisionPolicy, SeriesOracle, Valuation};
use dlcurves::multipoly::MultiPoly;

fn oracle(curve: &CurveSpec) -> SeriesOracle {
    SeriesOracle::new(curve, PrecisionPolicy::default_for(curve)).unwrap()
}

#[test]
fn ree_zero_orders_at_origin() {
    let c = CurveSpec::ree(1).unwrap();
    let t = expand_coordinates(&c, 1200).unwrap();
    let got: Vec<(String, usize)> = t.iter().map(|(n, s)| (n.to_string(), s.valuation().unwrap())).collect();
    let table = c.valuation_table();
    for (name, v) in &got {
        assert_eq!(*v as u64, table.get(name).unwrap().nu0, "{name}");
    }
}

#[test]
fn ree_pole_orders_at_infinity() {
    let c = CurveSpec::ree(1).unwrap();
    let mut o = oracle(&c);
    for name in &c.coords().names {
        let f = MultiPoly::var(c.coords(), c.field(), name).unwrap();
        let pole = o.pole_order(&f).unwrap().unwrap();
        assert_eq!(pole, c.valuation_table().get(name).unwrap().pole, "{name}");
    }
    let w8 = MultiPoly::var(c.coords(), c.field(), "w8").unwrap();
    assert_eq!(o.valuation_at_origin(&w8.pow(7)).unwrap(), Valuation::Finite(7252));
}
