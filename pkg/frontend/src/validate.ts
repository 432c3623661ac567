// Client-side form validation, matching the service's configuration ranges
// so obviously bad input never leaves the browser.

export const LINE_COUNT = 2;

export interface SessionForm {
  theta0: number;
  theta_star: number;
  gamma: number;
  n: number;
  alpha: number;
  seed?: number;
}

export type ValidationResult =
  | { ok: true; value: SessionForm }
  | { ok: false; errors: Record<string, string> };

export interface RawFormFields {
  theta0: string;
  theta_star: string;
  gamma: string;
  n: string;
  alpha: string;
  seed: string;
}

function parseNumber(raw: string): number | null {
  const trimmed = raw.trim();
  if (trimmed === "") return null;
  const value = Number(trimmed);
  return Number.isFinite(value) ? value : null;
}

export function validateForm(fields: RawFormFields): ValidationResult {
  const errors: Record<string, string> = {};

  const theta0 = parseNumber(fields.theta0);
  if (theta0 === null || theta0 <= 0 || theta0 >= 1) {
    errors.theta0 = "in-control probability must lie strictly between 0 and 1";
  }
  const thetaStar = parseNumber(fields.theta_star);
  if (thetaStar === null || thetaStar <= 0 || thetaStar >= 1) {
    errors.theta_star = "projected probability must lie strictly between 0 and 1";
  } else if (theta0 !== null && thetaStar === theta0) {
    errors.theta_star = "projected probability must differ from the in-control one";
  }
  const gamma = parseNumber(fields.gamma);
  const gammaCap = 1 / LINE_COUNT;
  if (gamma === null || gamma <= 0 || gamma > gammaCap) {
    errors.gamma = `exploration floor must lie in (0, ${gammaCap}]`;
  }
  const n = parseNumber(fields.n);
  if (n === null || !Number.isInteger(n) || n < 2) {
    errors.n = "budget must be a whole number of at least 2 units";
  }
  let alpha = parseNumber(fields.alpha);
  if (fields.alpha.trim() === "") {
    alpha = 0.0027;
  } else if (alpha === null || alpha <= 0 || alpha >= 1) {
    errors.alpha = "false alarm rate must lie strictly between 0 and 1";
  }
  let seed: number | undefined;
  if (fields.seed.trim() !== "") {
    const parsed = parseNumber(fields.seed);
    if (parsed === null || !Number.isInteger(parsed) || parsed < 0) {
      errors.seed = "seed must be a nonnegative whole number";
    } else {
      seed = parsed;
    }
  }

  if (Object.keys(errors).length > 0) {
    return { ok: false, errors };
  }
  return {
    ok: true,
    value: {
      theta0: theta0 as number,
      theta_star: thetaStar as number,
      gamma: gamma as number,
      n: n as number,
      alpha: alpha as number,
      seed,
    },
  };
}
