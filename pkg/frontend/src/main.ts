import { ApiClient } from './api';
import { boot } from './app';
import './style.css';

declare global {
  interface Window {
    /** API origin; empty means same-origin. */
    THEMESCOPE_API_BASE?: string;
  }
}

const base = window.THEMESCOPE_API_BASE ?? '';
const match = window.location.hash.match(/session=([A-Za-z0-9-]+)/);
const root = document.getElementById('app');
if (root) {
  void boot(root, new ApiClient(base), match?.[1]);
}
