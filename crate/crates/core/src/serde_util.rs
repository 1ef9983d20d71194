//! Serde adapters for readable JSON.

/// `BigRational` as a string such as `"5/2"` or `"-3"`.
pub mod rational {
    use num_rational::BigRational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        crate::polyzq::dyadic::parse_decimal(&s).map_err(D::Error::custom)
    }
}

/// `Option<BigRational>` in the same string form, `null` when absent.
pub mod rational_opt {
    use num_rational::BigRational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.collect_str(r),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| crate::polyzq::dyadic::parse_decimal(&s).map_err(D::Error::custom))
            .transpose()
    }
}
