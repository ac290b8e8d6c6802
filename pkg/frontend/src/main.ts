import { ApiClient } from './api';
import { createApp } from './app';

declare global {
  interface Window {
    PREDICTION_SERVICE_URL?: string;
  }
}

async function boot(): Promise<void> {
  const root = document.getElementById('app');
  if (!root) throw new Error('missing #app mount point');
  const baseUrl = window.PREDICTION_SERVICE_URL ?? 'http://127.0.0.1:8000';
  const api = new ApiClient(baseUrl);
  const [rubric, models] = await Promise.all([
    api.getRubric(),
    api.getModels(),
  ]);
  createApp(root, api, rubric, models.models);
}

void boot();
