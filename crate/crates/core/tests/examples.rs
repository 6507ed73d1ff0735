// Every example under examples/ must run to completion.

macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(groebner_basis, "groebner_basis.rs");
example!(hilbert, "hilbert.rs");
example!(regularity, "regularity.rs");
example!(local_cohomology, "local_cohomology.rs");
example!(top_dimensional, "top_dimensional.rs");
example!(hartshorne_rao, "hartshorne_rao.rs");
example!(bounds, "bounds.rs");
example!(bayer_stillman, "bayer_stillman.rs");
example!(ideal_files, "ideal_files.rs");

#[test]
fn groebner_basis_example_runs() {
    groebner_basis::run_example().unwrap();
}

#[test]
fn hilbert_example_runs() {
    hilbert::run_example().unwrap();
}

#[test]
fn regularity_example_runs() {
    regularity::run_example().unwrap();
}

#[test]
fn local_cohomology_example_runs() {
    local_cohomology::run_example().unwrap();
}

#[test]
fn top_dimensional_example_runs() {
    top_dimensional::run_example().unwrap();
}

#[test]
fn hartshorne_rao_example_runs() {
    hartshorne_rao::run_example().unwrap();
}

#[test]
fn bounds_example_runs() {
    bounds::run_example().unwrap();
}

#[test]
fn bayer_stillman_example_runs() {
    bayer_stillman::run_example().unwrap();
}

#[test]
fn ideal_files_example_runs() {
    ideal_files::run_example().unwrap();
}
