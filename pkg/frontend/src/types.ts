export type RatingLabel = 'None' | 'Partial' | 'Full';
export type RatingScore = 0 | 0.5 | 1;
export type PlatformCode = 'KS' | 'IGG';
export type CategoryCode = '3DP' | 'SW';
export type MainCategory = 'Real' | 'Win' | 'Worth';

export interface RubricQuestion {
  id: string;
  main_category: MainCategory;
  subcategory: string;
  short_name: string;
  text: string;
  criteria: { full: string; partial: string; none: string };
}

export interface RubricDocument {
  schema_version: number;
  questions: RubricQuestion[];
}

export interface ModelSummary {
  id: string;
  name: string;
  n: number;
  p: number;
  r2: number;
  adj_r2: number;
  factor_ids: string[];
  supports_intervals: boolean;
}

export interface ControlsForm {
  characters: number;
  figures: number;
  tables: number;
  videos: number;
  rewards: number;
  team_intro: boolean;
  timeline: boolean;
  goal: number;
}

export interface CampaignBody {
  platform: PlatformCode;
  category: CategoryCode;
  controls: ControlsForm;
  ratings: Record<string, number>;
  interval_level?: number;
}

export interface IntervalBand {
  level: number;
  lower: number;
  upper: number;
}

export interface PredictResponse {
  model_id: string;
  ln_amount: number;
  amount: number;
  interval: IntervalBand | null;
  intercept: number;
  per_term_contributions: Record<string, number>;
}

export interface WhatifEntry {
  factor: string;
  current: RatingLabel;
  next: RatingLabel | null;
  delta: number;
  headroom: boolean;
  projected_ln_amount: number;
}

export interface WhatifResponse {
  model_id: string;
  base: { ln_amount: number; amount: number };
  improvements: WhatifEntry[];
}
