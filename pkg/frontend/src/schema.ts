/** Experiment families and the CSV schema each one expects. */

export type FigureKind =
  | "error-curve"
  | "attack-strength"
  | "snr-curve"
  | "alteration"
  | "compromise";

export interface FigureSchema {
  /** Exact CSV header, in order. */
  header: string[];
  /** Column plotted on the x axis. */
  x: string;
  /** Column plotted on the y axis. */
  y: string;
  /** Column whose distinct values split the data into series; null = one series. */
  groupBy: string | null;
  xLabel: string;
  yLabel: string;
  title: string;
}

export const FIGURE_SCHEMAS: Record<FigureKind, FigureSchema> = {
  "error-curve": {
    header: ["w_m", "w_fa", "w_e"],
    x: "w_fa",
    y: "w_e",
    groupBy: "w_m",
    xLabel: "probability of false authentication (w_fa)",
    yLabel: "probability of error (w_e)",
    title: "Decision error vs false authentication",
  },
  "attack-strength": {
    header: ["alpha", "mean_compromised_fraction", "stddev"],
    x: "alpha",
    y: "mean_compromised_fraction",
    groupBy: null,
    xLabel: "attack strength (alpha)",
    yLabel: "mean compromised fraction",
    title: "Compromised devices vs attack strength",
  },
  "snr-curve": {
    header: ["snr_md", "rho", "r_nid"],
    x: "snr_md",
    y: "r_nid",
    groupBy: null,
    xLabel: "attacker SNR (linear)",
    yLabel: "compromised-receiver throughput (r_nid)",
    title: "Throughput at a compromised receiver",
  },
  alteration: {
    header: [
      "network_size",
      "ledger_enabled",
      "attempts",
      "succeeded",
      "detected",
      "success_rate",
    ],
    x: "network_size",
    y: "success_rate",
    groupBy: "ledger_enabled",
    xLabel: "network size (devices)",
    yLabel: "alteration detection success rate",
    title: "Message alteration with and without the ledger",
  },
  compromise: {
    header: ["trust_enabled", "network_size", "mean_compromised_count"],
    x: "network_size",
    y: "mean_compromised_count",
    groupBy: "trust_enabled",
    xLabel: "network size (devices)",
    yLabel: "mean compromised devices",
    title: "Compromised devices with and without trust",
  },
};

export const FIGURE_KINDS = Object.keys(FIGURE_SCHEMAS) as FigureKind[];

export function isFigureKind(value: string): value is FigureKind {
  return value in FIGURE_SCHEMAS;
}
